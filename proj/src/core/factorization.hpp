#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "core/trigpoly.hpp"

namespace riesz {

struct RootCluster {
  Complex location;
  int multiplicity = 1;
};

// Blaschke-type inner factor: unimodular * prod (z - a)/(1 - conj(a) z),
// kept as its zero list; |inner(z)| = 1 on the circle.
struct InnerFactor {
  std::vector<Complex> zeros;  // with multiplicity, all inside the disc
  Complex unimodular{1.0};

  Complex eval(Complex z) const;
};

struct Factorization {
  std::vector<RootCluster> roots;
  std::vector<std::size_t> inside;     // A: |r| < 1 - eps
  std::vector<std::size_t> on_circle;  // B: | |r| - 1 | <= eps
  std::vector<std::size_t> outside;    // C: |r| > 1 + eps
  std::vector<double> circle_distance;  // per root, | |r| - 1 |, kept for audit
  InnerFactor inner;
  TrigPoly outer;
  double alpha = 1.0;   // outer constant term, positive real
  double mahler = 1.0;  // |a_m| * prod_{c in C} |c|
};

inline constexpr double kDefaultRootTol = 1e-10;
inline constexpr double kCircleDeadBand = 1e-9;
inline constexpr std::int64_t kMaxRootDegree = 32768;
inline constexpr std::int64_t kMaxCompanionDegree = 10000;

// All deg(p) roots with residual-checked accuracy; clusters are merged into
// multiplicities. Aberth-Ehrlich simultaneous iteration seeded from the
// coefficient Newton polygon, companion-matrix fallback below degree 10^4.
std::vector<RootCluster> find_roots(const TrigPoly& p, double tol = kDefaultRootTol);

struct RootClassification {
  std::vector<std::size_t> inside, on_circle, outside;
};

RootClassification classify_roots(const std::vector<RootCluster>& roots,
                                  double eps_circle = kCircleDeadBand);

Factorization inner_outer(const TrigPoly& p, double tol = kDefaultRootTol,
                          double eps_circle = kCircleDeadBand);

// |a_m| * prod of outside-root moduli. Exact closed forms for one- and
// two-term polynomials (any degree); root-based otherwise.
double mahler_measure(const TrigPoly& p);

// Outer-factor constant term; identical fast paths as mahler_measure.
double outer_constant_term(const TrigPoly& p);

// Independent quadrature route: exp of the mean of log|p| on the circle,
// uniform N panels refined adaptively near zeros. Requires N >= 4*deg+4.
double mahler_measure_jensen(const TrigPoly& p, std::size_t n);

}  // namespace riesz
