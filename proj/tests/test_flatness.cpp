#include <cmath>

#include "core/errors.hpp"
#include "core/flatness.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace riesz;

TEST_CASE("flatness metrics examples") {
  auto unit = flatness_metrics(TrigPoly::constant(1.0));
  CHECK(unit.l1_over_l2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(unit.mahler_over_l2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(unit.sup_deviation <= 1e-12);

  auto two = flatness_metrics(TrigPoly({{0, 1.0}, {1, 1.0}}));
  CHECK(two.l1_over_l2 == doctest::Approx(2.0 * std::sqrt(2.0) / M_PI).epsilon(1e-6));
  CHECK(two.mahler_over_l2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(two.mahler_over_l2 <= two.l1_over_l2);
  CHECK(two.class_zero_one);
  CHECK(two.class_rankone_form);
  CHECK(two.class_unimodular);

  auto lam = flatness_metrics(TrigPoly({{0, 1.0}, {1, 1.0}}), 0, 0.8);
  CHECK(lam.class_a_lambda);  // normalized coefficients are 1/sqrt(2) < 0.8
  auto lam2 = flatness_metrics(TrigPoly({{0, 1.0}, {1, 1.0}}), 0, 0.5);
  CHECK_FALSE(lam2.class_a_lambda);

  auto lw = flatness_metrics(TrigPoly({{0, 1.0}, {1, -1.0}, {2, 1.0}}));
  CHECK(lw.class_littlewood);
  CHECK_FALSE(lw.class_zero_one);
}

TEST_CASE("jensen ordering invariant on random polynomials") {
  Rng rng(301);
  for (int rep = 0; rep < 40; ++rep) {
    auto p = riesz::testing::random_poly(rng, 24, 8);
    auto m = flatness_metrics(p);
    CHECK(m.mahler_over_l2 <= m.l1_over_l2 + 1e-9);
    CHECK(m.l1_over_l2 <= 1.0 + 1e-9);
  }
}

TEST_CASE("barker verification examples") {
  auto b3 = verify_barker({1, 1, -1});
  CHECK(b3.max_correlation == 1.0);
  CHECK(b3.is_barker);

  auto b2 = verify_barker({1, 1});
  CHECK(b2.max_correlation == 1.0);
  CHECK(b2.is_barker);

  auto alt = verify_barker({1, -1, 1, -1});
  CHECK(alt.max_correlation == 3.0);
  CHECK_FALSE(alt.is_barker);

  CHECK_THROWS_AS(verify_barker({1, 0, 1}), Error);
  CHECK_THROWS_AS(verify_barker({1}), Error);
}

TEST_CASE("barker catalog and Borwein-Mossinghoff bound") {
  auto catalog = barker_catalog();
  std::vector<std::size_t> lengths;
  for (const auto& e : catalog) {
    lengths.push_back(e.length);
    REQUIRE(e.signs.size() == e.length);
    CHECK(verify_barker(e.signs).is_barker);
    // Class tags read pre-normalization coefficients, so hand in the raw
    // +-1 polynomial; the normalized ratios are scale-invariant anyway.
    std::vector<Term> raw;
    for (std::size_t j = 0; j < e.signs.size(); ++j) {
      raw.push_back({static_cast<std::int64_t>(j), Complex(double(e.signs[j]), 0.0)});
    }
    auto m = flatness_metrics(TrigPoly(std::move(raw)));
    CHECK(m.mahler_over_l2 > 1.0 - 1.0 / static_cast<double>(e.length));
    CHECK(m.class_littlewood);
    auto mn = flatness_metrics(barker_polynomial(e.signs));
    CHECK(mn.mahler_over_l2 == doctest::Approx(m.mahler_over_l2).epsilon(1e-12));
  }
  CHECK(lengths == std::vector<std::size_t>{2, 3, 4, 5, 7, 11, 13});
}

TEST_CASE("barker brute force agreement up to n = 5") {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> signs(n);
      for (std::size_t j = 0; j < n; ++j) signs[j] = (mask >> j) & 1 ? 1 : -1;
      // Independent brute force: every aperiodic correlation by definition.
      double worst = 0.0;
      for (std::size_t k = 1; k < n; ++k) {
        double c = 0.0;
        for (std::size_t j = 0; j + k < n; ++j) {
          c += static_cast<double>(signs[j]) * static_cast<double>(signs[j + k]);
        }
        worst = std::max(worst, std::abs(c));
      }
      auto got = verify_barker(signs);
      CHECK(got.max_correlation == worst);
      CHECK(got.is_barker == (worst <= 1.0));
    }
  }
}

TEST_CASE("gaussian experiment") {
  // m = 2: the L1 norm is 2*sqrt(2)/pi regardless of the spacer draw.
  auto small = gaussian_l1_experiment(2, 5, 9);
  for (double v : small.trial_l1) {
    CHECK(v == doctest::Approx(2.0 * std::sqrt(2.0) / M_PI).epsilon(1e-6));
  }

  auto a = gaussian_l1_experiment(64, 8, 1234);
  auto b = gaussian_l1_experiment(64, 8, 1234);
  CHECK(a.trial_l1 == b.trial_l1);  // bit-identical rerun
  auto c = gaussian_l1_experiment(64, 8, 4321);
  CHECK(a.trial_l1 != c.trial_l1);

  auto threaded = gaussian_l1_experiment(64, 8, 1234, 0, 4);
  CHECK(threaded.trial_l1 == a.trial_l1);  // thread count cannot change values

  auto big = gaussian_l1_experiment(100, 10, 7);
  CHECK(big.deviation < 0.1);
  CHECK(big.target == doctest::Approx(0.88622692545275801).epsilon(1e-15));
}

TEST_CASE("b_m bisection") {
  CHECK(std::abs(bisect_bm(3) - (std::sqrt(5.0) - 1.0) / 2.0) <= 1e-10);
  CHECK(std::abs(bisect_bm(64) - 0.5) <= 1e-3);
  double prev = 1.0;
  for (std::int64_t m : {3, 4, 8, 16, 32, 64}) {
    const double bm = bisect_bm(m);
    CHECK(bm > 0.5);
    CHECK(bm < prev);
    prev = bm;
  }
  CHECK_THROWS_AS(bisect_bm(2), Error);
}

TEST_CASE("zero annulus check") {
  // 1 + z^h has all roots exactly on the circle.
  for (std::int64_t h : {2, 7, 20}) {
    auto chk = zero_annulus_check(TrigPoly({{0, 1.0}, {h, 1.0}}), h);
    CHECK(chk.violations == 0);
    for (const auto& r : chk.roots) {
      CHECK(std::abs(std::abs(r.location) - 1.0) < 1e-10);
    }
  }

  Rng rng(307);
  for (int rep = 0; rep < 30; ++rep) {
    const std::int64_t m = rng.uniform_int(2, 8);
    const std::int64_t h = rng.uniform_int(2, 50);
    std::vector<Term> terms = {{0, 1.0}};
    std::int64_t e = 0;
    for (std::int64_t j = 1; j < m; ++j) {
      e += h + rng.uniform_int(0, 10);
      terms.push_back({e, 1.0});
    }
    auto chk = zero_annulus_check(TrigPoly(std::move(terms)), h);
    CHECK(chk.violations == 0);
    CHECK(chk.refined_lower >= chk.lower - 1e-15);
    CHECK(chk.refined_upper <= chk.upper + 1e-15);
  }

  CHECK_THROWS_AS(zero_annulus_check(TrigPoly({{0, 1.0}, {1, 1.0}}), 2), Error);  // gap < h
  CHECK_THROWS_AS(zero_annulus_check(TrigPoly({{0, 2.0}, {3, 1.0}}), 3), Error);  // coeff != 1
}

TEST_CASE("zero-one annulus check") {
  auto one = zero_one_annulus_check(TrigPoly({{0, 1.0}, {1, 1.0}}));
  CHECK(one.violations == 0);
  REQUIRE(one.roots.size() == 1);
  CHECK(std::abs(one.roots[0].location - Complex(-1.0)) < 1e-12);

  auto cubic = zero_one_annulus_check(TrigPoly({{0, 1.0}, {1, 1.0}, {3, 1.0}}));
  CHECK(cubic.violations == 0);

  Rng rng(311);
  for (int rep = 0; rep < 60; ++rep) {
    const std::int64_t deg = rng.uniform_int(1, 40);
    std::vector<Term> terms = {{0, 1.0}, {deg, 1.0}};
    for (std::int64_t e = 1; e < deg; ++e) {
      if (rng.next_double() < 0.5) terms.push_back({e, 1.0});
    }
    auto chk = zero_one_annulus_check(TrigPoly(std::move(terms)));
    CHECK(chk.violations == 0);
  }

  CHECK_THROWS_AS(zero_one_annulus_check(TrigPoly({{0, 0.5}, {1, 1.0}})), Error);
}

TEST_CASE("cluster count check") {
  // Default delta: the regime needs n in the millions, so small n errors.
  std::vector<Term> lw;
  Rng rng(313);
  for (std::int64_t e = 0; e <= 512; ++e) {
    lw.push_back({e, rng.next_double() < 0.5 ? 1.0 : -1.0});
  }
  TrigPoly littlewood(std::move(lw));
  CHECK_THROWS_AS(cluster_count_check(littlewood, Complex(1.0)), Error);

  // Explicit delta: count roots of 1 + z^n near z = 1 and compare with the
  // arc-length enumeration oracle.
  const std::int64_t n = 512;
  TrigPoly binom({{0, 1.0}, {n, 1.0}});
  const double delta = 0.5;
  auto chk = cluster_count_check(binom, Complex(1.0), delta);
  std::size_t want = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    const double phi = M_PI * (2.0 * double(k) + 1.0) / double(n);
    if (std::abs(std::polar(1.0, phi) - Complex(1.0)) <= delta) ++want;
  }
  CHECK(chk.count == want);
  CHECK(chk.delta == delta);

  // Littlewood polynomial with explicit delta: informational pass/fail only.
  auto lchk = cluster_count_check(littlewood, Complex(1.0), 0.5);
  CHECK(lchk.count <= 512);
  CHECK(lchk.threshold == doctest::Approx(8.0 * std::sqrt(512.0) * std::log(512.0)));

  CHECK_THROWS_AS(cluster_count_check(binom, Complex(2.0), 0.5), Error);  // off-circle point
}
