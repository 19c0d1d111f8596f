// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "core/dichotomy.hpp"
#include "core/errors.hpp"
#include "core/factorization.hpp"
#include "core/flatness.hpp"
#include "core/products.hpp"
#include "core/rankone.hpp"
#include "core/rng.hpp"
#include "core/trigpoly.hpp"

using namespace riesz;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

TrigPoly random_dense_normalized(Rng& rng, std::int64_t max_degree) {
  const std::int64_t deg = rng.uniform_int(1, max_degree);
  std::vector<Term> terms;
  for (std::int64_t e = 0; e <= deg; ++e) {
    terms.push_back({e, Complex(rng.next_normal(), rng.next_normal())});
  }
  if (std::abs(terms[0].coeff) < 0.3) terms[0].coeff += Complex(1.0, 0.0);
  return normalize_l2(TrigPoly(std::move(terms)));
}

TrigPoly random_sparse_normalized(Rng& rng, std::int64_t max_degree, std::int64_t max_terms) {
  std::vector<Term> terms = {{0, Complex(rng.next_normal(), rng.next_normal())}};
  const std::int64_t want = rng.uniform_int(1, max_terms - 1);
  for (std::int64_t i = 0; i < want; ++i) {
    terms.push_back({rng.uniform_int(1, max_degree),
                     Complex(rng.next_normal(), rng.next_normal())});
  }
  if (std::abs(terms[0].coeff) < 0.3) terms[0].coeff += Complex(0.7, 0.0);
  return normalize_l2(TrigPoly(std::move(terms)));
}

RieszSpec random_lifted_spec(Rng& rng, std::size_t factors, std::int64_t max_degree,
                             std::int64_t max_terms) {
  std::vector<TrigPoly> inputs;
  for (std::size_t i = 0; i < factors; ++i) {
    inputs.push_back(random_sparse_normalized(rng, max_degree, max_terms));
  }
  return dissociate_lift(inputs).spec;
}

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1001);
  double worst = 0.0;
  bool pass = true;
  for (int rep = 0; rep < 200; ++rep) {
    const TrigPoly p = random_dense_normalized(rng, 64);
    const double m = mahler_measure(p);
    const double j = mahler_measure_jensen(p, default_grid_size(p.degree()));
    const double err = std::abs(m - j) / std::max(1.0, m);
    worst = std::max(worst, err);
    if (err > 1e-6) pass = false;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > 30.0) pass = false;
  report(1, pass, "Mahler root-product vs quadrature on 200 random polynomials",
         "worst relative gap " + fmt(worst) + ", runtime " + fmt(seconds) + " s <= 30 s");
}

void criterion_2() {
  std::vector<double> thetas(10, M_PI / 4.0);
  std::vector<std::int64_t> exps;
  std::int64_t e = 3;
  for (int i = 0; i < 10; ++i, e *= 3) exps.push_back(e);
  const RieszSpec spec = classical_riesz(thetas, exps).spec;

  bool pass = true;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 10; ++n) {
    const double got = mahler_of_product(spec, n);
    const double want = std::ldexp(1.0, -static_cast<int>(n));
    worst = std::max(worst, std::abs(got - want));
    if (std::abs(got - want) > 1e-12) pass = false;
  }
  const auto seq = bourgain_l1_sequence(spec, 10);
  const double stage1 = 2.0 * std::sqrt(2.0) / M_PI;
  if (std::abs(seq.values[0] - stage1) > 1e-6) pass = false;
  if (!(seq.values[9] < seq.values[0])) pass = false;
  report(2, pass, "classical Riesz (pi/4, 3^k): Mahler 2^-n and L1 decay",
         "worst |mahler - 2^-n| = " + fmt(worst) + ", L1 stage10 " + fmt(seq.values[9]) +
             " < stage1 " + fmt(seq.values[0]));
}

void criterion_3() {
  // Factors for indices j = 2..21; beta over the first 19 factors covers
  // j <= 20 and telescopes to sqrt(21/40). The j = 1 factor has constant
  // term cos(theta_1) = 0, which zeroes the full constant-term product.
  std::vector<double> thetas;
  std::vector<std::int64_t> exps;
  std::int64_t e = 9;
  for (int j = 2; j <= 21; ++j) {
    thetas.push_back(std::acos(std::sqrt(1.0 - 1.0 / (double(j) * double(j)))));
    exps.push_back(e);
    e *= 3;
  }
  const RieszSpec spec = classical_riesz(thetas, exps).spec;
  const StageDiagnostics d = stage_diagnostics(spec, 19);
  const double want = std::sqrt(21.0 / 40.0);
  const double cos_theta1 = std::sqrt(1.0 - 1.0);  // j = 1 factor
  const double b_with_j1 = cos_theta1 * d.b0;
  const bool pass = std::abs(d.beta - want) <= 1e-10 && b_with_j1 == 0.0;
  report(3, pass, "absolutely-continuous instance: beta_20 = sqrt(21/40), b = 0",
         "beta gap " + fmt(std::abs(d.beta - want)) + ", b with j=1 factor = " +
             fmt(b_with_j1));
}

void criterion_4() {
  Rng rng(1004);
  bool pass = true;
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto spec = random_lifted_spec(rng, static_cast<std::size_t>(rng.uniform_int(2, 3)),
                                         8, 4);
    if (!is_dissociated(spec.factors).dissociated) {
      pass = false;
      continue;
    }
    const std::size_t n = spec.stage_count();
    const TrigPoly s = partial_product(spec, n);
    const auto density = density_grid(spec, n, default_grid_size(s.degree()));
    double mean = 0.0;
    for (double v : density) mean += v;
    mean /= double(density.size());
    worst = std::max(worst, std::abs(mean - 1.0));
    if (std::abs(mean - 1.0) > 1e-10) pass = false;
  }
  report(4, pass, "density mean 1 on 100 random dissociated lifted specs",
         "worst |mean - 1| = " + fmt(worst));
}

void criterion_5() {
  Rng rng(1005);
  bool pass = true;
  for (int rep = 0; rep < 1000 && pass; ++rep) {
    RankOneParams params;
    const std::size_t stages = static_cast<std::size_t>(rng.uniform_int(1, 8));
    for (std::size_t k = 0; k < stages; ++k) {
      RankOneStage s;
      s.m = rng.uniform_int(2, 6);
      for (std::int64_t i = 0; i + 1 < s.m; ++i) s.spacers.push_back(rng.uniform_int(0, 10));
      if (rep % 2 == 0) {
        double sum = 0.0;
        for (std::int64_t i = 0; i < s.m; ++i) {
          s.probs.push_back(0.1 + rng.next_double());
          sum += s.probs.back();
        }
        for (double& p : s.probs) p /= sum;
        s.phases.push_back(Complex(1.0));
        for (std::int64_t i = 1; i < s.m; ++i) {
          s.phases.push_back(std::polar(1.0, 6.283185307179586 * rng.next_double()));
        }
      }
      params.stages.push_back(std::move(s));
    }

    const ReturnTimeTable table = return_times(params);
    for (std::size_t k = 0; k < stages; ++k) {
      const auto h_prev = table.heights[k];
      const auto& r = table.returns[k];
      if (r.front() < h_prev) pass = false;                       // (2)
      if (table.heights[k + 1] != r.back() + h_prev) pass = false;  // (1)
      for (std::size_t i = 1; i < r.size(); ++i) {
        if (r[i] - r[i - 1] < h_prev) pass = false;               // (3)
      }
    }

    const RieszSpec spec = build_polynomials(params, stages);
    if (!is_dynamical_origin(spec).dynamical) pass = false;
    const ReconstructedParams rec = reconstruct_params(spec);
    for (std::size_t k = 0; k < stages; ++k) {
      if (rec.m[k] != params.stages[k].m) pass = false;
      if (rec.spacers[k] != params.stages[k].spacers) pass = false;
    }
  }
  report(5, pass, "1000 random rank-one parameter sets: conditions, round trip, origin",
         pass ? "all held" : "violation found");
}

void criterion_6() {
  Rng rng(1006);
  bool pass = true;
  for (int rep = 0; rep < 100 && pass; ++rep) {
    std::vector<TrigPoly> inputs;
    const std::int64_t count = rng.uniform_int(1, 6);
    for (std::int64_t i = 0; i < count; ++i) {
      inputs.push_back(random_sparse_normalized(rng, 20, 5));
    }
    const LiftResult lift = dissociate_lift(inputs);
    if (!is_dissociated(lift.spec.factors).dissociated) pass = false;
    if (!is_dynamical_origin(lift.spec).dynamical) pass = false;
  }
  report(6, pass, "100 random dissociation lifts pass both predicates",
         pass ? "all held" : "violation found");
}

void criterion_7() {
  Rng rng(1007);
  bool pass = true;
  std::size_t annulus_violations = 0, zero_one_violations = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const std::int64_t m = rng.uniform_int(2, 8);
    const std::int64_t h = rng.uniform_int(2, 50);
    std::vector<Term> terms = {{0, 1.0}};
    std::int64_t e = 0;
    for (std::int64_t j = 1; j < m; ++j) {
      e += h + rng.uniform_int(0, 10);
      terms.push_back({e, 1.0});
    }
    annulus_violations += zero_annulus_check(TrigPoly(std::move(terms)), h).violations;
  }
  if (annulus_violations != 0) pass = false;

  const double b3 = bisect_bm(3);
  if (std::abs(b3 - (std::sqrt(5.0) - 1.0) / 2.0) > 1e-10) pass = false;
  const double b64 = bisect_bm(64);
  if (std::abs(b64 - 0.5) > 1e-3) pass = false;

  for (int rep = 0; rep < 500; ++rep) {
    const std::int64_t deg = rng.uniform_int(1, 40);
    std::vector<Term> terms = {{0, 1.0}, {deg, 1.0}};
    for (std::int64_t e2 = 1; e2 < deg; ++e2) {
      if (rng.next_double() < 0.5) terms.push_back({e2, 1.0});
    }
    zero_one_violations += zero_one_annulus_check(TrigPoly(std::move(terms))).violations;
  }
  if (zero_one_violations != 0) pass = false;

  report(7, pass, "zero bounds: 500 rank-one forms, b_3, b_64, 500 zero-one polynomials",
         "annulus violations " + std::to_string(annulus_violations) + ", |b3 - golden| = " +
             fmt(std::abs(b3 - (std::sqrt(5.0) - 1.0) / 2.0)) + ", |b64 - 1/2| = " +
             fmt(std::abs(b64 - 0.5)) + ", zero-one violations " +
             std::to_string(zero_one_violations));
}

void criterion_8() {
  bool pass = true;
  for (const auto& entry : barker_catalog()) {
    if (!verify_barker(entry.signs).is_barker) pass = false;
    const double m = mahler_measure(barker_polynomial(entry.signs));
    if (!(m > 1.0 - 1.0 / static_cast<double>(entry.length))) pass = false;
  }
  // Exhaustive agreement with brute force for n <= 5.
  for (std::size_t n = 2; n <= 5 && pass; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> signs(n);
      for (std::size_t j = 0; j < n; ++j) signs[j] = (mask >> j) & 1 ? 1 : -1;
      double worst = 0.0;
      for (std::size_t k = 1; k < n; ++k) {
        double c = 0.0;
        for (std::size_t j = 0; j + k < n; ++j) c += double(signs[j]) * double(signs[j + k]);
        worst = std::max(worst, std::abs(c));
      }
      const auto got = verify_barker(signs);
      if (got.max_correlation != worst || got.is_barker != (worst <= 1.0)) pass = false;
    }
  }
  report(8, pass, "Barker catalog, Mahler bound 1 - 1/n, brute-force agreement n <= 5",
         pass ? "all held" : "violation found");
}

void criterion_9() {
  const auto a = gaussian_l1_experiment(400, 50, 1);
  const auto b = gaussian_l1_experiment(400, 50, 1);
  const bool identical = a.trial_l1 == b.trial_l1;
  const bool close = a.deviation <= 0.05;
  report(9, identical && close, "Gaussian L1 experiment (m=400, 50 trials, seed 1)",
         "mean " + fmt(a.mean) + ", |mean - sqrt(pi)/2| = " + fmt(a.deviation) +
             " <= 0.05, rerun bit-identical: " + (identical ? "yes" : "no"));
}

void criterion_10() {
  Rng rng(1010);
  bool pass = true;
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<TrigPoly> factors;
    const std::int64_t count = rng.uniform_int(2, 6);
    for (std::int64_t i = 0; i < count; ++i) {
      factors.push_back(random_sparse_normalized(rng, 20, 5));
    }
    const RieszSpec spec = make_spec(std::move(factors), "pi-q");
    const double base = mahler_of_product(spec, spec.stage_count());
    for (std::int64_t q : {2, 3, 5}) {
      const double contracted =
          mahler_of_product(contract_product(spec, q), spec.stage_count());
      worst = std::max(worst, std::abs(contracted - base));
      if (std::abs(contracted - base) > 1e-9) pass = false;
    }
  }
  report(10, pass, "Mahler invariance under contraction q in {2,3,5} on 50 random specs",
         "worst |difference| = " + fmt(worst));
}

void criterion_11() {
  Rng rng(1011);
  bool pass = true;
  double worst = 0.0;
  for (int rep = 0; rep < 25; ++rep) {
    const auto spec = random_lifted_spec(rng, 4, 6, 3);
    std::vector<std::size_t> left, right;
    for (std::size_t j = 1; j <= spec.stage_count(); ++j) {
      (rng.next_double() < 0.5 ? left : right).push_back(j);
    }
    if (left.empty() || right.empty()) continue;
    const RieszSpec s1 = subproduct(spec, left);
    const RieszSpec s2 = subproduct(spec, right);
    const std::size_t grid =
        default_grid_size(partial_product(spec, spec.stage_count()).degree());
    const auto d0 = density_grid(spec, spec.stage_count(), grid);
    const auto d1 = density_grid(s1, s1.stage_count(), grid);
    const auto d2 = density_grid(s2, s2.stage_count(), grid);
    for (std::size_t k = 0; k < grid; ++k) {
      const double gap = std::abs(d0[k] - d1[k] * d2[k]);
      worst = std::max(worst, gap);
      if (gap > 1e-12) pass = false;
    }
  }
  report(11, pass, "finite-stage density factorization over disjoint splits",
         "worst pointwise gap " + fmt(worst));
}

void criterion_12() {
  Rng rng(1012);
  bool pass = true;
  double worst_affinity = 0.0, worst_slack = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto spec = random_lifted_spec(rng, static_cast<std::size_t>(rng.uniform_int(3, 5)),
                                         8, 4);
    const auto self = affinity_sequence(spec, spec, spec.stage_count());
    for (double v : self.values) {
      worst_affinity = std::max(worst_affinity, std::abs(v - 1.0));
      if (std::abs(v - 1.0) > 1e-10) pass = false;
    }
    const auto g = guenais_test(spec, spec.stage_count());
    for (double s : g.slack) {
      worst_slack = std::min(worst_slack, s);
      if (s < -1e-10) pass = false;
    }
  }
  report(12, pass, "self-affinity 1 and Guenais slack on 20 random specs",
         "worst |affinity - 1| = " + fmt(worst_affinity) + ", min slack = " +
             fmt(worst_slack));
}

}  // namespace

int main() {
  std::printf("acceptance suite (engine %s)\n", "1.0.0");
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
  } catch (const Error& e) {
    std::printf("FAIL: unexpected library error: %s\n", e.what());
    return 1;
  }
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
