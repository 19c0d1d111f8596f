#include "core/flatness.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace riesz {

namespace {
constexpr double kCoeffTol = 1e-12;
constexpr double kRootTol = 1e-8;
}  // namespace

FlatnessMetrics flatness_metrics(const TrigPoly& p, std::size_t grid,
                                 std::optional<double> lambda) {
  if (p.is_zero()) fail(Error::Code::invalid_argument, "empty polynomial");
  const TrigPoly q = normalize_l2(p);
  if (grid == 0) grid = default_grid_size(q.degree());

  FlatnessMetrics m;
  m.lambda = lambda;
  m.l1_over_l2 = l1_norm(q, grid);
  m.mahler_over_l2 = mahler_measure(q);
  const auto values = evaluate_grid(q, grid);
  for (const Complex& v : values) {
    m.sup_deviation = std::max(m.sup_deviation, std::abs(std::abs(v) - 1.0));
  }
  for (const Term& t : q.terms()) {
    m.max_normalized_coeff = std::max(m.max_normalized_coeff, std::abs(t.coeff));
  }

  // Class membership is exact on coefficients, before normalization except
  // for A_lambda which is defined on the normalized representative.
  const bool full_support = p.term_count() == static_cast<std::size_t>(p.degree()) + 1;
  bool all_unit = true, all_one = true, all_pm1 = true;
  for (const Term& t : p.terms()) {
    if (std::abs(std::abs(t.coeff) - 1.0) > kCoeffTol) all_unit = false;
    if (std::abs(t.coeff - Complex(1.0)) > kCoeffTol) all_one = false;
    if (std::abs(t.coeff.imag()) > kCoeffTol ||
        std::abs(std::abs(t.coeff.real()) - 1.0) > kCoeffTol) {
      all_pm1 = false;
    }
  }
  const bool has_constant = std::abs(p.constant_term()) > 0.0;
  m.class_unimodular = all_unit && full_support;
  m.class_zero_one = all_one && has_constant;
  m.class_littlewood = all_pm1 && full_support;
  m.class_rankone_form = all_one && has_constant && p.term_count() >= 2;
  if (lambda) {
    bool ok = true;
    for (const Term& t : q.terms()) {
      if (std::abs(t.coeff.imag()) > kCoeffTol || t.coeff.real() < -kCoeffTol ||
          t.coeff.real() > *lambda + kCoeffTol) {
        ok = false;
      }
    }
    m.class_a_lambda = ok;
  }
  return m;
}

std::vector<BarkerEntry> barker_catalog() {
  return {
      {2, {1, 1}},
      {3, {1, 1, -1}},
      {4, {1, 1, -1, 1}},
      {5, {1, 1, 1, -1, 1}},
      {7, {1, 1, 1, -1, -1, 1, -1}},
      {11, {1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1}},
      {13, {1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1}},
  };
}

BarkerCheck verify_barker(const std::vector<int>& signs) {
  if (signs.size() < 2) fail(Error::Code::invalid_argument, "sequence needs length >= 2");
  for (int e : signs) {
    if (e != 1 && e != -1) fail(Error::Code::invalid_argument, "signs must be +1 or -1");
  }
  BarkerCheck out;
  const std::size_t n = signs.size();
  for (std::size_t k = 1; k < n; ++k) {
    long corr = 0;
    for (std::size_t j = 0; j + k < n; ++j) corr += signs[j] * signs[j + k];
    out.max_correlation = std::max(out.max_correlation, std::abs(static_cast<double>(corr)));
  }
  out.is_barker = out.max_correlation <= 1.0;
  return out;
}

TrigPoly barker_polynomial(const std::vector<int>& signs) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(signs.size()));
  std::vector<Term> terms;
  terms.reserve(signs.size());
  for (std::size_t j = 0; j < signs.size(); ++j) {
    terms.push_back({static_cast<std::int64_t>(j), Complex(signs[j] * scale, 0.0)});
  }
  return TrigPoly(std::move(terms));
}

GaussianExperiment gaussian_l1_experiment(std::int64_t m, std::size_t trials,
                                          std::uint64_t seed, std::size_t grid,
                                          unsigned threads) {
  if (m < 2) fail(Error::Code::invalid_argument, "cutting size must be >= 2");
  if (trials < 1) fail(Error::Code::invalid_argument, "need at least one trial");

  GaussianExperiment out;
  out.trial_l1.resize(trials);
  out.target = std::sqrt(M_PI) / 2.0;

  auto run_trial = [&](std::size_t t) {
    Rng rng(seed, t);
    std::vector<Term> terms = {{0, Complex(1.0)}};
    std::int64_t e = 0;
    for (std::int64_t j = 1; j < m; ++j) {
      e = checked_add(e, m + rng.uniform_int(0, m - 1), "gaussian exponents");
      terms.push_back({e, Complex(1.0)});
    }
    const TrigPoly p = normalize_l2(TrigPoly(std::move(terms)));
    const std::size_t n = grid ? grid : default_grid_size(p.degree());
    out.trial_l1[t] = l1_norm(p, n);
  };

  if (threads <= 1 || trials < 2) {
    for (std::size_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(trials));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < trials; t += workers) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  double sum = 0.0;
  for (double v : out.trial_l1) sum += v;
  out.mean = sum / static_cast<double>(trials);
  double var = 0.0;
  for (double v : out.trial_l1) var += (v - out.mean) * (v - out.mean);
  out.stddev = trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1)) : 0.0;
  out.deviation = std::abs(out.mean - out.target);
  return out;
}

double bisect_bm(std::int64_t m) {
  if (m < 3) fail(Error::Code::invalid_argument, "x^m - 2x + 1 has no root in (1/2, 1) for m < 3");
  // Evaluated as x^m + (1 - 2x): at x = 0.5 the affine part vanishes exactly,
  // leaving the 2^-m signal that the naive ordering cancels away.
  auto f = [m](double x) {
    double xp = 1.0;
    for (std::int64_t i = 0; i < m; ++i) xp *= x;
    return xp + (1.0 - 2.0 * x);
  };
  double lo = 0.5, hi = 1.0 - 1e-9;
  if (!(f(lo) > 0.0) || !(f(hi) < 0.0)) fail(Error::Code::numeric, "bisection bracket failed");
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

AnnulusCheck zero_annulus_check(const TrigPoly& p, std::int64_t h) {
  if (h < 1) fail(Error::Code::invalid_argument, "base height must be >= 1");
  const auto& terms = p.terms();
  if (terms.size() < 2) fail(Error::Code::invalid_argument, "rank-one form needs >= 2 terms");
  for (const Term& t : terms) {
    if (std::abs(t.coeff - Complex(1.0)) > kCoeffTol) {
      fail(Error::Code::invalid_argument, "rank-one form needs all coefficients 1");
    }
  }
  if (terms[0].exponent != 0) {
    fail(Error::Code::invalid_argument, "rank-one form needs constant term 1");
  }
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].exponent - terms[i - 1].exponent < h) {
      fail(Error::Code::invalid_argument, "rank-one form needs exponent gaps >= h");
    }
  }

  AnnulusCheck out;
  out.roots = find_roots(p);
  const double inv_h = 1.0 / static_cast<double>(h);
  out.lower = std::pow(0.5, inv_h);
  out.upper = std::pow(2.0, inv_h);
  const std::int64_t m = static_cast<std::int64_t>(terms.size());
  out.bm = m >= 3 ? bisect_bm(m) : 1.0;
  out.refined_lower = std::pow(out.bm, inv_h);
  out.refined_upper = std::pow(1.0 / out.bm, inv_h);
  for (const RootCluster& r : out.roots) {
    const double a = std::abs(r.location);
    if (a < out.lower - kRootTol || a > out.upper + kRootTol) {
      out.violations += static_cast<std::size_t>(r.multiplicity);
    }
    if (a < out.refined_lower - kRootTol || a > out.refined_upper + kRootTol) {
      out.refined_violations += static_cast<std::size_t>(r.multiplicity);
    }
  }
  return out;
}

ZeroOneCheck zero_one_annulus_check(const TrigPoly& p) {
  const auto& terms = p.terms();
  if (terms.size() < 2 || terms[0].exponent != 0) {
    fail(Error::Code::invalid_argument, "need constant term 1 and degree >= 1");
  }
  for (const Term& t : terms) {
    if (std::abs(t.coeff - Complex(1.0)) > kCoeffTol) {
      fail(Error::Code::invalid_argument, "coefficients must be 0 or 1");
    }
  }
  ZeroOneCheck out;
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  out.lower = 1.0 / phi;
  out.upper = phi;
  out.roots = find_roots(p);
  for (const RootCluster& r : out.roots) {
    const double a = std::abs(r.location);
    if (a <= out.lower - kRootTol || a >= out.upper + kRootTol) {
      out.violations += static_cast<std::size_t>(r.multiplicity);
    }
  }
  return out;
}

ClusterCount cluster_count_check(const TrigPoly& p, Complex point,
                                 std::optional<double> delta) {
  const auto& terms = p.terms();
  if (p.degree() < 2 || terms.empty() || terms[0].exponent != 0) {
    fail(Error::Code::invalid_argument, "need |a_0| = 1 and degree >= 2");
  }
  if (std::abs(std::abs(terms[0].coeff) - 1.0) > kCoeffTol ||
      std::abs(std::abs(terms.back().coeff) - 1.0) > kCoeffTol) {
    fail(Error::Code::invalid_argument, "|a_0| and |a_n| must equal 1");
  }
  for (const Term& t : terms) {
    if (std::abs(t.coeff) > 1.0 + kCoeffTol) {
      fail(Error::Code::invalid_argument, "coefficients must satisfy |a_k| <= 1");
    }
  }
  if (std::abs(std::abs(point) - 1.0) > 1e-6) {
    fail(Error::Code::invalid_argument, "the point must lie on the unit circle");
  }

  const double n = static_cast<double>(p.degree());
  ClusterCount out;
  if (delta) {
    out.delta = *delta;
    if (!(out.delta > 0.0)) fail(Error::Code::invalid_argument, "delta must be positive");
  } else {
    out.delta = 33.0 * M_PI * std::log(n) / std::sqrt(n);
    if (out.delta >= 1.0) fail(Error::Code::invalid_argument, "n too small");
  }
  out.threshold = 8.0 * std::sqrt(n) * std::log(n);
  for (const RootCluster& r : find_roots(p)) {
    if (std::abs(r.location - point) <= out.delta) {
      out.count += static_cast<std::size_t>(r.multiplicity);
    }
  }
  out.meets_threshold = static_cast<double>(out.count) >= out.threshold;
  return out;
}

}  // namespace riesz
