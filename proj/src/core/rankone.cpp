#include "core/rankone.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace riesz {

void validate_params(const RankOneParams& params) {
  if (params.stages.empty()) fail(Error::Code::invalid_argument, "no stages");
  for (std::size_t k = 0; k < params.stages.size(); ++k) {
    const RankOneStage& s = params.stages[k];
    const std::string where = "stage " + std::to_string(k + 1);
    if (s.m < 2) fail(Error::Code::invalid_argument, where + ": cutting number must be >= 2");
    if (s.spacers.size() != static_cast<std::size_t>(s.m - 1)) {
      fail(Error::Code::invalid_argument, where + ": spacer list must have m-1 entries");
    }
    for (std::int64_t a : s.spacers) {
      if (a < 0) fail(Error::Code::invalid_argument, where + ": spacers must be >= 0");
    }
    if (!s.probs.empty()) {
      if (s.probs.size() != static_cast<std::size_t>(s.m)) {
        fail(Error::Code::invalid_argument, where + ": probability list must have m entries");
      }
      double sum = 0.0;
      for (double p : s.probs) {
        if (!(p > 0.0)) fail(Error::Code::invalid_argument, where + ": probabilities must be > 0");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        fail(Error::Code::invalid_argument, where + ": probabilities must sum to 1");
      }
    }
    if (!s.phases.empty()) {
      if (s.phases.size() != static_cast<std::size_t>(s.m)) {
        fail(Error::Code::invalid_argument, where + ": phase list must have m entries");
      }
      if (std::abs(s.phases[0] - Complex(1.0)) > 1e-12) {
        fail(Error::Code::invalid_argument, where + ": leading phase must be 1");
      }
      for (const Complex& c : s.phases) {
        if (std::abs(std::abs(c) - 1.0) > 1e-12) {
          fail(Error::Code::invalid_argument, where + ": phases must be unimodular");
        }
      }
    }
  }
}

RankOneStage uniform_stage(std::int64_t m, std::vector<std::int64_t> spacers) {
  RankOneStage s;
  s.m = m;
  s.spacers = std::move(spacers);
  return s;
}

ReturnTimeTable return_times(const RankOneParams& params) {
  validate_params(params);
  ReturnTimeTable table;
  table.heights.push_back(1);  // h_0
  for (std::size_t k = 0; k < params.stages.size(); ++k) {
    const RankOneStage& s = params.stages[k];
    const std::string where = "return times at stage " + std::to_string(k + 1);
    const std::int64_t h_prev = table.heights.back();
    std::vector<std::int64_t> r;
    std::int64_t spacer_sum = 0;
    for (std::int64_t i = 1; i < s.m; ++i) {
      // R_i = i*h_{k-1} + a_0 + ... + a_{i-1}
      spacer_sum = checked_add(spacer_sum, s.spacers[static_cast<std::size_t>(i - 1)], where);
      const std::int64_t base = checked_mul(i, h_prev, where);
      r.push_back(checked_add(base, spacer_sum, where));
    }
    table.heights.push_back(checked_add(r.back(), h_prev, where));
    table.returns.push_back(std::move(r));
  }
  return table;
}

RieszSpec build_polynomials(const RankOneParams& params, std::size_t k) {
  if (k < 1 || k > params.stages.size()) {
    fail(Error::Code::invalid_argument, "stage count out of range");
  }
  const ReturnTimeTable table = return_times(params);
  std::vector<TrigPoly> factors;
  factors.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const RankOneStage& s = params.stages[j];
    const auto m = static_cast<std::size_t>(s.m);
    std::vector<Term> terms;
    terms.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double p = s.probs.empty() ? 1.0 / static_cast<double>(s.m) : s.probs[i];
      const Complex c = (s.phases.empty() || i == 0) ? Complex(1.0) : s.phases[i];
      const std::int64_t e = (i == 0) ? 0 : table.returns[j][i - 1];
      terms.push_back({e, std::sqrt(p) * c});
    }
    factors.push_back(normalize_l2(TrigPoly(std::move(terms))));
  }
  return RieszSpec{std::move(factors), "rankone", /*reflected=*/true};
}

OriginCheck is_dynamical_origin(const RieszSpec& spec) {
  OriginCheck out;
  out.purely = true;
  std::int64_t h = 1;  // h_0
  for (std::size_t j = 0; j < spec.stage_count(); ++j) {
    const TrigPoly& q = spec.factors[j];
    if (std::abs(q.constant_term()) < TrigPoly::kZeroThreshold) {
      fail(Error::Code::invalid_argument,
           "factor " + std::to_string(j + 1) + " has zero constant term");
    }
    const auto& terms = q.terms();
    for (const Term& t : terms) {
      if (!(t.coeff.real() > 0.0) || std::abs(t.coeff.imag()) > 1e-12) out.purely = false;
    }
    for (std::size_t i = 1; i < terms.size(); ++i) {
      const std::int64_t gap = terms[i].exponent - terms[i - 1].exponent;
      if (gap < h) {
        out.dynamical = false;
        out.purely = false;
        out.violation = "factor " + std::to_string(j + 1) + ": exponent gap " +
                        std::to_string(gap) + " below height " + std::to_string(h);
        return out;
      }
    }
    h = checked_add(q.degree(), h, "dynamical origin heights");
  }
  out.dynamical = true;
  return out;
}

ReconstructedParams reconstruct_params(const RieszSpec& spec) {
  ReconstructedParams out;
  std::int64_t h = 1;
  for (std::size_t j = 0; j < spec.stage_count(); ++j) {
    const auto& terms = spec.factors[j].terms();
    out.m.push_back(static_cast<std::int64_t>(terms.size()));
    std::vector<std::int64_t> spacers;
    std::vector<double> probs;
    probs.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      probs.push_back(std::norm(terms[i].coeff));
      if (i >= 1) spacers.push_back(terms[i].exponent - terms[i - 1].exponent - h);
    }
    out.spacers.push_back(std::move(spacers));
    out.probs.push_back(std::move(probs));
    h = checked_add(spec.factors[j].degree(), h, "reconstruct heights");
  }
  return out;
}

LiftResult dissociate_lift(const std::vector<TrigPoly>& ps, std::int64_t multiplier) {
  if (ps.empty()) fail(Error::Code::invalid_argument, "empty polynomial list");
  if (multiplier < 2) fail(Error::Code::invalid_argument, "lift multiplier must be >= 2");

  LiftResult out;
  std::vector<TrigPoly> lifted;
  lifted.reserve(ps.size());
  std::int64_t h = 1;         // lifted-height recursion, h_0 = 1
  std::int64_t h_before = 1;  // height entering the previous stage
  std::int64_t cum_deg = 0;   // degree of the lifted product so far
  for (std::size_t j = 0; j < ps.size(); ++j) {
    if (ps[j].is_zero() || std::abs(ps[j].constant_term()) < TrigPoly::kZeroThreshold) {
      fail(Error::Code::invalid_argument,
           "input " + std::to_string(j + 1) + " needs a nonzero constant term");
    }
    const TrigPoly p = normalize_l2(ps[j]);
    std::int64_t n_j = 1;
    if (j > 0) {
      // H_{j-1} = D_{j-1} + h_{j-2}; the next substitution is mult*H + 1.
      const std::int64_t bound = checked_add(cum_deg, h_before, "lift schedule");
      n_j = checked_add(checked_mul(multiplier, bound, "lift schedule"), 1, "lift schedule");
    }
    out.lift_exponents.push_back(n_j);
    lifted.push_back(contract(p, n_j));
    const std::int64_t lifted_deg = lifted.back().degree();
    cum_deg = checked_add(cum_deg, lifted_deg, "lift schedule");
    h_before = h;
    h = checked_add(lifted_deg, h, "lift schedule");
  }

  RieszSpec spec{std::move(lifted), "dissociate_lift", false};
  validate_spec(spec);
  if (!is_dissociated(spec.factors).dissociated || !is_dissociated_modsq(spec.factors).dissociated) {
    fail(Error::Code::numeric, "lift postcondition failed: factors not dissociated");
  }
  if (!is_dynamical_origin(spec).dynamical) {
    fail(Error::Code::numeric, "lift postcondition failed: not of dynamical origin");
  }
  out.spec = std::move(spec);
  return out;
}

FlatLiftResult flat_lift_schedule(const std::vector<TrigPoly>& ps, std::size_t count,
                                  std::int64_t multiplier) {
  if (count < 1) fail(Error::Code::invalid_argument, "count must be >= 1");
  FlatLiftResult out;
  std::vector<bool> used(ps.size(), false);
  std::vector<TrigPoly> chosen;
  for (std::size_t k = 1; k <= count; ++k) {
    const double eps = std::ldexp(1.0, -static_cast<int>(k));
    bool found = false;
    for (std::size_t j = 0; j < ps.size() && !found; ++j) {
      if (used[j]) continue;
      const TrigPoly p = normalize_l2(ps[j]);
      const auto values = evaluate_grid(p, default_grid_size(p.degree()));
      std::size_t bad = 0;
      for (const Complex& v : values) {
        if (std::abs(std::abs(v) - 1.0) >= eps) ++bad;
      }
      const double fraction = static_cast<double>(bad) / static_cast<double>(values.size());
      if (fraction <= eps) {
        used[j] = true;
        out.selected.push_back(j);
        out.fractions.push_back(fraction);
        chosen.push_back(p);
        found = true;
      }
    }
    if (!found) {
      fail(Error::Code::infeasible,
           "flat selection infeasible at stage k = " + std::to_string(k));
    }
  }
  out.lift = dissociate_lift(chosen, multiplier);
  return out;
}

double dissipativity_product(const RankOneParams& params, std::size_t k) {
  validate_params(params);
  if (k < 1 || k > params.stages.size()) {
    fail(Error::Code::invalid_argument, "stage count out of range");
  }
  double acc = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    const RankOneStage& s = params.stages[j];
    double best = 0.0;
    if (s.probs.empty()) {
      best = 1.0 / static_cast<double>(s.m);
    } else {
      for (double p : s.probs) best = std::max(best, p);
    }
    acc *= best;
  }
  return acc;
}

}  // namespace riesz
