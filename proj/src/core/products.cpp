#include "core/products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "core/errors.hpp"
#include "core/factorization.hpp"

namespace riesz {

namespace {
constexpr std::int64_t kMaxDensityDegree = std::int64_t{1} << 22;

void check_stage(const RieszSpec& spec, std::size_t n) {
  if (n < 1 || n > spec.stage_count()) fail(Error::Code::invalid_argument, "stage out of range");
}

std::int64_t stage_degree(const RieszSpec& spec, std::size_t n) {
  std::int64_t deg = 0;
  for (std::size_t j = 0; j < n; ++j) {
    deg = checked_add(deg, spec.factors[j].degree(), "stage degree");
  }
  return deg;
}
}  // namespace

void validate_spec(const RieszSpec& spec) {
  if (spec.factors.empty()) fail(Error::Code::invalid_argument, "spec needs at least one factor");
  for (std::size_t j = 0; j < spec.factors.size(); ++j) {
    const TrigPoly& p = spec.factors[j];
    const std::string where = "factor " + std::to_string(j + 1);
    if (p.is_zero()) fail(Error::Code::invalid_argument, where + " is zero");
    double sumsq = 0.0;
    for (const Term& t : p.terms()) sumsq += std::norm(t.coeff);
    if (std::abs(sumsq - 1.0) > 1e-12) {
      fail(Error::Code::invalid_argument, where + " is not L2-normalized");
    }
    const Complex c0 = p.constant_term();
    if (!(c0.real() > 0.0) || std::abs(c0.imag()) > 1e-12) {
      fail(Error::Code::invalid_argument, where + " lacks a positive real constant term");
    }
  }
}

RieszSpec make_spec(std::vector<TrigPoly> factors, std::string label, bool reflected) {
  RieszSpec spec{std::move(factors), std::move(label), reflected};
  validate_spec(spec);
  return spec;
}

TrigPoly partial_product(const RieszSpec& spec, std::size_t n) {
  check_stage(spec, n);
  TrigPoly acc = spec.factors[0];
  for (std::size_t j = 1; j < n; ++j) acc = multiply(acc, spec.factors[j]);
  return acc;
}

std::vector<double> density_grid(const RieszSpec& spec, std::size_t n, std::size_t grid) {
  check_stage(spec, n);
  if (stage_degree(spec, n) > kMaxDensityDegree) {
    fail(Error::Code::grid, "density grid refused above degree 2^22");
  }
  const TrigPoly s = partial_product(spec, n);
  if (grid < 2 * static_cast<std::uint64_t>(s.degree()) + 1) {
    fail(Error::Code::grid, "grid too coarse");
  }
  const auto values = evaluate_grid(s, grid);
  std::vector<double> density(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) density[k] = std::norm(values[k]);
  return density;
}

std::vector<Complex> fourier_coefficients(const RieszSpec& spec, std::size_t n,
                                          std::int64_t kmax) {
  check_stage(spec, n);
  if (kmax < 0) {
    fail(Error::Code::invalid_argument,
         "negative Fourier coefficients of an analytic polynomial vanish; request rejected");
  }
  const TrigPoly s = partial_product(spec, n);
  std::vector<Complex> out(static_cast<std::size_t>(kmax) + 1, Complex(0.0));
  for (const Term& t : s.terms()) {
    if (t.exponent <= kmax) out[static_cast<std::size_t>(t.exponent)] = t.coeff;
  }
  return out;
}

Complex fourier_coefficient(const RieszSpec& spec, std::size_t n, std::int64_t j) {
  check_stage(spec, n);
  if (j < 0) {
    fail(Error::Code::invalid_argument,
         "negative Fourier coefficients of an analytic polynomial vanish; request rejected");
  }
  const TrigPoly s = partial_product(spec, n);
  for (const Term& t : s.terms()) {
    if (t.exponent == j) return t.coeff;
  }
  return Complex(0.0);
}

StageDiagnostics stage_diagnostics(const RieszSpec& spec, std::size_t n) {
  check_stage(spec, n);
  StageDiagnostics d;
  d.stage = n;
  d.degree = stage_degree(spec, n);

  double b0 = 1.0, beta = 1.0, mahler = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    b0 *= spec.factors[j].constant_term().real();
    const double alpha = outer_constant_term(spec.factors[j]);
    beta *= alpha;
    mahler *= alpha * alpha;
  }
  d.b0 = b0;
  d.beta = beta;
  d.mahler_product = mahler;

  double tail = 1.0;
  for (std::size_t j = n; j < spec.stage_count(); ++j) {
    tail *= spec.factors[j].constant_term().real();
  }
  d.tail_c0 = tail;
  d.margin = static_cast<double>(d.degree) * (1.0 - tail);

  if (d.degree <= kMaxDensityDegree) {
    const TrigPoly s = partial_product(spec, n);
    double l2sq = 0.0;
    for (const Term& t : s.terms()) l2sq += std::norm(t.coeff);
    d.l2_sq = l2sq;
    d.l1 = l1_norm(s, default_grid_size(s.degree()));
  } else {
    d.l2_sq = std::numeric_limits<double>::quiet_NaN();
    d.l1 = std::nullopt;
  }
  return d;
}

double mahler_of_product(const RieszSpec& spec, std::size_t n) {
  check_stage(spec, n);
  double acc = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double alpha = outer_constant_term(spec.factors[j]);
    acc *= alpha * alpha;
  }
  return acc;
}

double mahler_of_product_jensen(const RieszSpec& spec, std::size_t n, std::size_t grid) {
  check_stage(spec, n);
  const TrigPoly s = partial_product(spec, n);
  const double j = mahler_measure_jensen(s, grid);
  return j * j;
}

RieszSpec subproduct(const RieszSpec& spec, const std::vector<std::size_t>& indices) {
  if (indices.empty()) fail(Error::Code::invalid_argument, "subproduct needs at least one index");
  std::vector<TrigPoly> factors;
  factors.reserve(indices.size());
  std::size_t prev = 0;
  for (std::size_t idx : indices) {
    if (idx < 1 || idx > spec.stage_count()) {
      fail(Error::Code::invalid_argument, "subproduct index out of range");
    }
    if (idx <= prev) fail(Error::Code::invalid_argument, "subproduct indices must increase");
    prev = idx;
    factors.push_back(spec.factors[idx - 1]);
  }
  RieszSpec out{std::move(factors), spec.label.empty() ? "" : spec.label + ":sub",
                spec.reflected};
  return out;
}

Corollary25Schedule select_corollary25_indices(const RieszSpec& spec) {
  std::vector<double> a0(spec.stage_count());
  for (std::size_t j = 0; j < spec.stage_count(); ++j) {
    a0[j] = spec.factors[j].constant_term().real();
  }
  // Truncated tail products prod_{l>=j} a_0^(l), 0-based from j.
  std::vector<double> tail_from(spec.stage_count() + 1, 1.0);
  for (std::size_t j = spec.stage_count(); j-- > 0;) {
    tail_from[j] = tail_from[j + 1] * a0[j];
  }
  if (!(tail_from[0] > 0.0)) {
    fail(Error::Code::invalid_argument, "truncated b estimate is zero");
  }

  Corollary25Schedule out;
  out.indices.push_back(1);
  out.margins.push_back(0.0);  // first factor is unconditional
  std::int64_t deg = spec.factors[0].degree();
  int step = 1;
  std::size_t next = 1;  // 0-based candidate
  while (next < spec.stage_count()) {
    const double budget = std::ldexp(1.0, -step);
    bool found = false;
    for (std::size_t j = next; j < spec.stage_count(); ++j) {
      const double margin = static_cast<double>(deg) * (1.0 - tail_from[j]);
      if (margin <= budget) {
        out.indices.push_back(j + 1);
        out.margins.push_back(margin);
        deg = checked_add(deg, spec.factors[j].degree(), "corollary 2.5 schedule");
        next = j + 1;
        ++step;
        found = true;
        break;
      }
    }
    if (!found) {
      fail(Error::Code::infeasible,
           "corollary 2.5 schedule infeasible at step " + std::to_string(step) +
               " within the truncation");
    }
  }
  return out;
}

RieszSpec contract_product(const RieszSpec& spec, std::int64_t q) {
  if (q < 1) fail(Error::Code::invalid_argument, "contraction order must be >= 1");
  std::vector<TrigPoly> factors;
  factors.reserve(spec.stage_count());
  for (const TrigPoly& p : spec.factors) factors.push_back(contract(p, q));
  return RieszSpec{std::move(factors), spec.label, spec.reflected};
}

ClassicalRieszResult classical_riesz(const std::vector<double>& thetas,
                                     const std::vector<std::int64_t>& exponents,
                                     TailAssertion tail) {
  if (thetas.empty() || thetas.size() != exponents.size()) {
    fail(Error::Code::invalid_argument, "thetas and exponents must be nonempty and equal length");
  }
  constexpr double kHalfPi = 1.5707963267948966192313216916398;
  ClassicalRieszResult out;
  std::vector<TrigPoly> factors;
  double criterion = 0.0, l2sum = 0.0;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const double t = thetas[k];
    if (!(t > 0.0) || !(t < kHalfPi)) {
      fail(Error::Code::invalid_argument, "theta outside (0, pi/2)");
    }
    if (exponents[k] < 1) fail(Error::Code::invalid_argument, "exponents must be positive");
    if (k > 0 && exponents[k] < 3 * exponents[k - 1]) out.lacunary_ok = false;
    const double c = std::cos(t), s = std::sin(t);
    factors.push_back(normalize_l2(TrigPoly({{0, c}, {exponents[k], s}})));
    criterion += c * c * s * s;
    const double a = std::sin(2.0 * t);
    l2sum += a * a;
  }
  out.spec = make_spec(std::move(factors), "classical_riesz");
  out.criterion_partial = criterion;
  out.l2_partial = l2sum;
  switch (tail) {
    case TailAssertion::convergent:
      out.verdict =
          "absolutely continuous by the classical criterion (user-asserted convergent tail; "
          "evaluated on the truncation)";
      break;
    case TailAssertion::divergent:
      out.verdict =
          "singular by the classical criterion (user-asserted divergent tail; evaluated on "
          "the truncation)";
      break;
    case TailAssertion::unknown:
      out.verdict = "undetermined: criterion partial sums reported; the test is asymptotic";
      break;
  }
  return out;
}

RieszSpec ledrappier_spec(const std::vector<std::int64_t>& heights,
                          const std::vector<std::int64_t>& spacers) {
  if (heights.empty() || heights.size() != spacers.size()) {
    fail(Error::Code::invalid_argument, "heights and spacers must be nonempty and equal length");
  }
  std::vector<TrigPoly> factors;
  factors.reserve(heights.size());
  for (std::size_t k = 0; k < heights.size(); ++k) {
    const std::int64_t e = checked_add(heights[k], spacers[k], "ledrappier exponent");
    if (e < 1) fail(Error::Code::invalid_argument, "h_k + a_k must be strictly positive");
    factors.push_back(normalize_l2(TrigPoly({{0, 1.0}, {e, 1.0}})));
  }
  return make_spec(std::move(factors), "ledrappier");
}

TailAutocorrelation tail_autocorrelation(const RieszSpec& spec, std::size_t m,
                                         std::int64_t kmax) {
  if (m >= spec.stage_count()) {
    fail(Error::Code::invalid_argument, "tail start must leave at least one factor");
  }
  if (kmax < 1) fail(Error::Code::invalid_argument, "kmax must be >= 1");
  TrigPoly t = spec.factors[m];
  for (std::size_t j = m + 1; j < spec.stage_count(); ++j) t = multiply(t, spec.factors[j]);
  if (t.term_count() * t.term_count() > (std::size_t{1} << 24)) {
    fail(Error::Code::grid, "tail autocorrelation refused: too many term pairs");
  }

  std::map<std::int64_t, Complex> corr;
  for (const Term& a : t.terms()) {
    for (const Term& b : t.terms()) {
      const std::int64_t k = a.exponent - b.exponent;
      if (k >= 1 && k <= kmax) corr[k] += a.coeff * std::conj(b.coeff);
    }
  }
  TailAutocorrelation out;
  for (const auto& [k, c] : corr) out.max_abs = std::max(out.max_abs, std::abs(c));
  const double d0 = t.constant_term().real();
  out.bound = std::sqrt(std::max(0.0, 1.0 - d0 * d0));
  return out;
}

}  // namespace riesz
