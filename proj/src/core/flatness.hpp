#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/factorization.hpp"
#include "core/trigpoly.hpp"

namespace riesz {

struct FlatnessMetrics {
  double l1_over_l2 = 1.0;
  double mahler_over_l2 = 1.0;
  double sup_deviation = 0.0;       // max over grid of ||p(z)| - 1| after normalization
  double max_normalized_coeff = 0.0;  // smallest admissible lambda
  bool class_unimodular = false;    // (U): all |a_j| = 1 before normalization
  bool class_zero_one = false;      // (B): coefficients in {0,1}, constant term 1
  bool class_a_lambda = false;      // normalized coefficients real in [0, lambda]
  bool class_littlewood = false;    // coefficients in {-1,+1}, full support
  bool class_rankone_form = false;  // (R): all coefficients 1, two or more terms
  std::optional<double> lambda;     // the lambda the A_lambda tag was tested against
};

FlatnessMetrics flatness_metrics(const TrigPoly& p, std::size_t grid = 0,
                                 std::optional<double> lambda = std::nullopt);

struct BarkerEntry {
  std::size_t length = 0;
  std::vector<int> signs;
};

// Canonical Barker sequences of lengths 2, 3, 4, 5, 7, 11, 13.
std::vector<BarkerEntry> barker_catalog();

struct BarkerCheck {
  double max_correlation = 0.0;  // max_k |sum_j e_j e_{j+k}|, 0 < k < n
  bool is_barker = false;
};

BarkerCheck verify_barker(const std::vector<int>& signs);

// sum e_j z^j / sqrt(n).
TrigPoly barker_polynomial(const std::vector<int>& signs);

struct GaussianExperiment {
  std::vector<double> trial_l1;
  double mean = 0.0;
  double stddev = 0.0;
  double target = 0.0;     // sqrt(pi)/2
  double deviation = 0.0;  // |mean - target|
};

// Per trial: P = (1/sqrt(m)) (1 + sum_j z^{j m + a_1 + ... + a_j}) with
// spacers uniform on [0, m); the L1 norm is compared against the complex
// Gaussian first absolute moment. Trials use split RNG streams, so results
// are bit-reproducible for a fixed seed regardless of thread count.
GaussianExperiment gaussian_l1_experiment(std::int64_t m, std::size_t trials,
                                          std::uint64_t seed, std::size_t grid = 0,
                                          unsigned threads = 1);

// Root of x^m - 2x + 1 in (1/2, 1), certified by bisection to 1e-12; m >= 3.
double bisect_bm(std::int64_t m);

struct AnnulusCheck {
  std::vector<RootCluster> roots;
  double lower = 0.0, upper = 0.0;      // (1/2)^{1/h} and 2^{1/h}
  std::size_t violations = 0;           // against [lower - tol, upper + tol]
  double bm = 1.0;                      // refinement constant (1 when m = 2)
  double refined_lower = 0.0, refined_upper = 0.0;
  std::size_t refined_violations = 0;   // informational
};

// p must have the rank-one shape: all coefficients 1, constant term 1, first
// gap and every later exponent gap at least h.
AnnulusCheck zero_annulus_check(const TrigPoly& p, std::int64_t h);

struct ZeroOneCheck {
  std::vector<RootCluster> roots;
  double lower = 0.0, upper = 0.0;  // 1/phi and phi
  std::size_t violations = 0;
};

// Coefficients in {0,1} with constant and leading term 1; all roots must lie
// strictly inside the golden-ratio annulus.
ZeroOneCheck zero_one_annulus_check(const TrigPoly& p);

struct ClusterCount {
  std::size_t count = 0;       // roots within delta of the point (with multiplicity)
  double threshold = 0.0;      // 8 sqrt(n) log(n)
  double delta = 0.0;
  bool meets_threshold = false;
};

// Counts roots near a circle point for |a_0| = |a_n| = 1, |a_k| <= 1. With no
// explicit delta the regime condition 33*pi*log(n)/sqrt(n) < 1 is enforced.
// Informational: a shortfall flags root-finder resolution, not a refutation.
ClusterCount cluster_count_check(const TrigPoly& p, Complex point,
                                 std::optional<double> delta = std::nullopt);

}  // namespace riesz
