#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/trigpoly.hpp"

namespace riesz {

// Finite-stage specification of a generalized Riesz product prod |P_j|^2:
// an ordered list of L2-normalized factors with positive constant term.
// Immutable after construction; stage arguments are 1-based.
struct RieszSpec {
  std::vector<TrigPoly> factors;
  std::string label;
  // Rank-one constructions store +R exponents for the z^{-R} terms; the
  // modulus squares are unchanged under conjugate reflection.
  bool reflected = false;

  std::size_t stage_count() const { return factors.size(); }
};

void validate_spec(const RieszSpec& spec);
RieszSpec make_spec(std::vector<TrigPoly> factors, std::string label = "",
                    bool reflected = false);

TrigPoly partial_product(const RieszSpec& spec, std::size_t n);

// |S_n|^2 sampled on the N-point grid. N >= 2*deg(S_n)+1; densities are
// refused above degree 2^22.
std::vector<double> density_grid(const RieszSpec& spec, std::size_t n, std::size_t grid);

// Coefficients b_j of S_n for j = 0..kmax (exact; zero beyond the degree).
std::vector<Complex> fourier_coefficients(const RieszSpec& spec, std::size_t n,
                                          std::int64_t kmax);
// Single coefficient; negative indices are rejected (S_n is analytic).
Complex fourier_coefficient(const RieszSpec& spec, std::size_t n, std::int64_t j);

struct StageDiagnostics {
  std::size_t stage = 0;
  std::int64_t degree = 0;        // m_n = deg S_n
  double b0 = 1.0;                // constant term of S_n
  double beta = 1.0;              // prod of per-factor outer constant terms
  double tail_c0 = 1.0;           // prod_{j=n+1}^{K} a_0^{(j)}, truncated at K
  double margin = 0.0;            // m_n * (1 - tail_c0)
  double mahler_product = 1.0;    // prod of squared outer constant terms
  double l2_sq = 1.0;             // sum of |b_j|^2 at this stage
  std::optional<double> l1;       // unset when the grid is refused
  bool truncated = true;          // tail quantities use the finite stage count
};

StageDiagnostics stage_diagnostics(const RieszSpec& spec, std::size_t n);

// prod_{j<=n} alpha_j^2 with per-factor alpha from the factorization module.
double mahler_of_product(const RieszSpec& spec, std::size_t n);
// Quadrature cross-check: mahler_measure_jensen(S_n, grid)^2.
double mahler_of_product_jensen(const RieszSpec& spec, std::size_t n, std::size_t grid);

// New spec holding the selected factors (1-based increasing indices).
RieszSpec subproduct(const RieszSpec& spec, const std::vector<std::size_t>& indices);

struct Corollary25Schedule {
  std::vector<std::size_t> indices;  // 1-based, increasing; first is always 1
  std::vector<double> margins;       // achieved m_i * (1 - tail_c0) per selection
};

// Greedy schedule: after the unconditional first factor, each further factor
// j must satisfy deg(S_selected) * (1 - prod_{l>=j} a_0^(l)) <= 2^-i.
Corollary25Schedule select_corollary25_indices(const RieszSpec& spec);

RieszSpec contract_product(const RieszSpec& spec, std::int64_t q);

enum class TailAssertion { convergent, divergent, unknown };

struct ClassicalRieszResult {
  RieszSpec spec;
  std::string verdict;          // criterion evaluation, never a limit claim
  double criterion_partial;     // sum of cos^2 sin^2 over supplied stages
  double l2_partial;            // sum of sin(2 theta)^2 (lacunary-series test)
  bool lacunary_ok = true;      // n_{k+1}/n_k >= 3 held at every step
  bool truncated = true;
};

// Factors cos(theta_k) + sin(theta_k) z^{n_k}; thetas strictly inside
// (0, pi/2). Lacunarity failures downgrade to a flag, not an error.
ClassicalRieszResult classical_riesz(const std::vector<double>& thetas,
                                     const std::vector<std::int64_t>& exponents,
                                     TailAssertion tail = TailAssertion::unknown);

// Factors (1 + z^{h_k + a_k}) / sqrt(2).
RieszSpec ledrappier_spec(const std::vector<std::int64_t>& heights,
                          const std::vector<std::int64_t>& spacers);

struct TailAutocorrelation {
  double max_abs = 0.0;  // max over 1 <= k <= kmax of |c_k(|T_m|^2)|
  double bound = 0.0;    // sqrt(1 - d_0^2) with d_0 the tail constant term
};

// Fourier coefficients of |prod_{j=m+1}^{K} P_j|^2 away from the constant
// term; the finite-stage proxy for tails converging weakly to Lebesgue.
TailAutocorrelation tail_autocorrelation(const RieszSpec& spec, std::size_t m,
                                         std::int64_t kmax);

}  // namespace riesz
