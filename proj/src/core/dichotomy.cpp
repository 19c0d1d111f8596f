#include "core/dichotomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace riesz {

namespace {

std::int64_t joint_degree(const RieszSpec& mu, const RieszSpec* nu, std::size_t nmax) {
  std::int64_t deg = 0;
  for (std::size_t j = 0; j < nmax; ++j) {
    deg = checked_add(deg, mu.factors[j].degree(), "affinity degree");
    if (nu) deg = checked_add(deg, nu->factors[j].degree(), "affinity degree");
  }
  return deg;
}

std::size_t pick_grid(std::int64_t degree, std::size_t requested) {
  std::size_t n = default_grid_size(degree);
  if (requested == 0) return n;
  if (requested < 2 * static_cast<std::uint64_t>(degree) + 1) {
    fail(Error::Code::grid, "grid too coarse");
  }
  std::size_t g = 1;
  while (g < requested) g <<= 1;
  return g;
}

// Stage means of |S_n| (times |T_n| when nu is present) at one resolution.
std::vector<double> stage_means(const RieszSpec& mu, const RieszSpec* nu, std::size_t nmax,
                                std::size_t grid) {
  std::vector<double> mod(grid, 1.0);
  std::vector<double> out;
  out.reserve(nmax);
  for (std::size_t j = 0; j < nmax; ++j) {
    const auto pj = evaluate_grid(mu.factors[j], grid);
    if (nu) {
      const auto qj = evaluate_grid(nu->factors[j], grid);
      for (std::size_t k = 0; k < grid; ++k) mod[k] *= std::abs(pj[k]) * std::abs(qj[k]);
    } else {
      for (std::size_t k = 0; k < grid; ++k) mod[k] *= std::abs(pj[k]);
    }
    double mean = 0.0;
    for (double v : mod) mean += v;
    out.push_back(mean / static_cast<double>(grid));
  }
  return out;
}

StageSequence refined_sequence(const RieszSpec& mu, const RieszSpec* nu, std::size_t nmax,
                               std::size_t requested) {
  if (nmax < 1 || nmax > mu.stage_count() || (nu && nmax > nu->stage_count())) {
    fail(Error::Code::invalid_argument, "stage range exceeds the spec");
  }
  std::size_t grid = pick_grid(joint_degree(mu, nu, nmax), requested);

  StageSequence seq;
  std::vector<double> coarse = stage_means(mu, nu, nmax, grid / 2);
  std::vector<double> fine = stage_means(mu, nu, nmax, grid);
  for (int round = 0;; ++round) {
    double disc = 0.0;
    for (std::size_t i = 0; i < nmax; ++i) disc = std::max(disc, std::abs(fine[i] - coarse[i]));
    seq.discrepancy = disc;
    if (disc <= 1e-8 || round >= 2) break;
    grid <<= 1;
    seq.refined = true;
    coarse.swap(fine);
    fine = stage_means(mu, nu, nmax, grid);
  }
  seq.values = std::move(fine);
  seq.grid = grid;
  return seq;
}

}  // namespace

StageSequence affinity_sequence(const RieszSpec& mu, const RieszSpec& nu, std::size_t nmax,
                                std::size_t grid) {
  return refined_sequence(mu, &nu, nmax, grid);
}

StageSequence bourgain_l1_sequence(const RieszSpec& mu, std::size_t nmax, std::size_t grid) {
  return refined_sequence(mu, nullptr, nmax, grid);
}

GuenaisReport guenais_test(const RieszSpec& mu, std::size_t nmax, std::size_t grid) {
  if (nmax < 1 || nmax > mu.stage_count()) {
    fail(Error::Code::invalid_argument, "stage range exceeds the spec");
  }
  GuenaisReport rep;
  double vsum = 0.0;
  for (std::size_t j = 0; j < nmax; ++j) {
    const TrigPoly& p = mu.factors[j];
    const double l1 = l1_norm(p, default_grid_size(p.degree()));
    rep.factor_l1.push_back(l1);
    const double vj = std::sqrt(std::max(0.0, 1.0 - l1 * l1));
    rep.v.push_back(vj);
    vsum += vj;
    rep.partial_sums.push_back(vsum);
  }
  const StageSequence seq = bourgain_l1_sequence(mu, nmax, grid);
  rep.product_l1 = seq.values;
  double prod = 1.0;
  for (std::size_t n = 0; n < nmax; ++n) {
    prod *= rep.factor_l1[n];
    rep.slack.push_back(rep.partial_sums[n] - std::abs(rep.product_l1[n] - prod));
  }
  return rep;
}

std::vector<double> rn_sqrt_grid(const RieszSpec& mu, std::size_t n, std::size_t grid) {
  const TrigPoly s = partial_product(mu, n);
  if (grid == 0) grid = default_grid_size(s.degree());
  if (grid < 2 * static_cast<std::uint64_t>(s.degree()) + 1) {
    fail(Error::Code::grid, "grid too coarse");
  }
  const auto values = evaluate_grid(s, grid);
  std::vector<double> out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) out[k] = std::abs(values[k]);
  return out;
}

PhaseGrid phase_grid(const RieszSpec& mu, std::size_t n, std::size_t grid, double floor) {
  const TrigPoly s = partial_product(mu, n);
  if (grid == 0) grid = default_grid_size(s.degree());
  const auto values = evaluate_grid(s, grid);
  PhaseGrid out;
  out.values.resize(values.size());
  out.defined.resize(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double m = std::abs(values[k]);
    if (m > floor) {
      out.values[k] = values[k] / m;
      out.defined[k] = true;
    } else {
      out.values[k] = Complex(0.0);
      out.defined[k] = false;
      ++out.undefined_count;
    }
  }
  return out;
}

Complex phase_fourier_coefficient(const PhaseGrid& phase, std::int64_t k) {
  const std::size_t n = phase.values.size();
  if (n == 0) fail(Error::Code::invalid_argument, "empty phase grid");
  Complex acc(0.0);
  std::size_t counted = 0;
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (std::size_t j = 0; j < n; ++j) {
    if (!phase.defined[j]) continue;
    const std::int64_t m = ((-k % static_cast<std::int64_t>(n)) + static_cast<std::int64_t>(n)) %
                           static_cast<std::int64_t>(n);
    const std::int64_t mj = (static_cast<std::int64_t>(j) * m) % static_cast<std::int64_t>(n);
    acc += phase.values[j] *
           std::polar(1.0, kTwoPi * static_cast<double>(mj) / static_cast<double>(n));
    ++counted;
  }
  if (counted == 0) fail(Error::Code::numeric, "phase undefined on the whole grid");
  return acc / static_cast<double>(counted);
}

SupportBound support_upper_bound(const RieszSpec& mu, std::size_t budget, std::uint64_t seed) {
  if (budget < 1) fail(Error::Code::invalid_argument, "budget must be >= 1");
  const std::size_t k = mu.stage_count();

  SupportBound out;
  out.d_hat = std::numeric_limits<double>::infinity();
  std::set<std::vector<std::size_t>> seen;

  auto evaluate = [&](const std::vector<std::size_t>& subset) {
    if (out.subsets.size() >= budget) return false;
    if (!seen.insert(subset).second) return true;
    TrigPoly prod = mu.factors[subset[0] - 1];
    for (std::size_t i = 1; i < subset.size(); ++i) {
      prod = multiply(prod, mu.factors[subset[i] - 1]);
    }
    const double l1 = l1_norm(prod, default_grid_size(prod.degree()));
    out.subsets.push_back(subset);
    out.values.push_back(l1);
    out.d_hat = std::min(out.d_hat, l1);
    return out.subsets.size() < budget;
  };

  bool more = true;
  for (std::size_t i = 1; i <= k && more; ++i) more = evaluate({i});
  for (std::size_t i = 1; i <= k && more; ++i) {
    for (std::size_t j = i + 1; j <= k && more; ++j) more = evaluate({i, j});
  }
  Rng rng(seed, 0x5bd1e995);
  std::size_t attempts = 0;
  while (more && attempts < 64 * budget) {
    ++attempts;
    std::vector<std::size_t> subset;
    for (std::size_t i = 1; i <= k; ++i) {
      if (rng.next_double() < 0.5) subset.push_back(i);
    }
    if (subset.empty()) continue;
    more = evaluate(subset);
  }
  return out;
}

std::vector<Theorem615Row> theorem615_statistics(const RieszSpec& mu,
                                                 const std::vector<double>& g,
                                                 std::size_t nmax, std::size_t grid) {
  if (nmax < 1 || nmax > mu.stage_count()) {
    fail(Error::Code::invalid_argument, "stage range exceeds the spec");
  }
  if (grid == 0) {
    std::int64_t deg = 0;
    for (std::size_t j = 0; j < nmax; ++j) deg = std::max(deg, mu.factors[j].degree());
    grid = default_grid_size(deg);
  }
  if (g.size() != grid) {
    fail(Error::Code::invalid_argument, "test function must be sampled on the same grid");
  }
  double gmean = 0.0;
  for (double v : g) {
    if (v < 0.0) fail(Error::Code::invalid_argument, "test function must be nonnegative");
    gmean += v;
  }
  gmean /= static_cast<double>(grid);
  if (gmean <= 0.0) fail(Error::Code::invalid_argument, "test function must not vanish identically");

  std::vector<Theorem615Row> rows;
  rows.reserve(nmax);
  for (std::size_t j = 0; j < nmax; ++j) {
    const TrigPoly& p = mu.factors[j];
    if (grid < 2 * static_cast<std::uint64_t>(p.degree()) + 1) {
      fail(Error::Code::grid, "grid too coarse");
    }
    const auto values = evaluate_grid(p, grid);
    double plain = 0.0, weighted = 0.0;
    for (std::size_t kk = 0; kk < grid; ++kk) {
      const double m = std::abs(values[kk]);
      plain += m;
      weighted += g[kk] * m;
    }
    plain /= static_cast<double>(grid);
    weighted /= static_cast<double>(grid);
    rows.push_back({plain, weighted / gmean});
  }
  return rows;
}

DichotomyReport build_dichotomy_report(const RieszSpec& mu, const std::optional<RieszSpec>& nu,
                                       std::size_t nmax, std::size_t grid, std::size_t budget,
                                       std::uint64_t seed) {
  DichotomyReport rep;
  const StageSequence bourgain = bourgain_l1_sequence(mu, nmax, grid);
  rep.bourgain_l1 = bourgain.values;
  rep.grid = bourgain.grid;
  if (nu) {
    rep.affinity = affinity_sequence(mu, *nu, nmax, grid).values;
  } else {
    rep.affinity = rep.bourgain_l1;
  }
  rep.guenais_partial = guenais_test(mu, nmax, grid).partial_sums;
  rep.support_bound =
      support_upper_bound(mu, budget ? budget : mu.stage_count(), seed).d_hat;
  for (std::size_t n = 1; n <= nmax; ++n) rep.stages.push_back(n);

  // Hint heuristics only; every criterion here is asymptotic.
  const double threshold = 0.1;
  const std::size_t window = 3;
  std::string hints;
  if (rep.bourgain_l1.size() >= window) {
    bool fires = true;
    for (std::size_t i = rep.bourgain_l1.size() - window; i < rep.bourgain_l1.size(); ++i) {
      if (rep.bourgain_l1[i] >= threshold) fires = false;
      if (i + 1 < rep.bourgain_l1.size() && rep.bourgain_l1[i + 1] > rep.bourgain_l1[i]) {
        fires = false;
      }
    }
    if (fires) {
      hints += "L1 sequence below " + std::to_string(threshold) +
               " with no rebound over the last " + std::to_string(window) +
               " stages (singularity criterion trend; finite-stage evidence only). ";
    }
  }
  if (!rep.guenais_partial.empty() && rep.guenais_partial.back() < 1.0) {
    hints += "Guenais partial sums stay below 1 at the truncation. ";
  }
  if (hints.empty()) hints = "no criterion trend fired at this truncation";
  rep.verdict_hints = hints;
  return rep;
}

}  // namespace riesz
