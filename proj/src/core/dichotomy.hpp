#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/products.hpp"
#include "core/trigpoly.hpp"

namespace riesz {

// Every quantity here is a finite-stage surrogate: nu is replaced by its
// stage-n density and all integrals are grid means, so outputs certify the
// truncation, never the weak-* limit.

struct StageSequence {
  std::vector<double> values;    // entry i is stage i+1
  std::size_t grid = 0;          // grid actually used after refinement
  double discrepancy = 0.0;      // worst half- vs full-grid disagreement
  bool refined = false;
};

// Grid means of prod_{j<=n} |P_j| |Q_j| for n = 1..nmax. A coarse/fine
// comparison (N vs 2N) triggers one refinement above 1e-8 disagreement.
StageSequence affinity_sequence(const RieszSpec& mu, const RieszSpec& nu, std::size_t nmax,
                                std::size_t grid = 0);

// ||S_n||_1 per stage: the affinity against Lebesgue (all Q_j = 1).
StageSequence bourgain_l1_sequence(const RieszSpec& mu, std::size_t nmax,
                                   std::size_t grid = 0);

struct GuenaisReport {
  std::vector<double> factor_l1;     // ||P_k||_1, each on its own default grid
  std::vector<double> v;             // sqrt(1 - ||P_k||_1^2)
  std::vector<double> partial_sums;  // cumulative sums of v
  std::vector<double> product_l1;    // ||S_n||_1 per stage
  std::vector<double> slack;         // sum_j v_j - |  ||S_n||_1 - prod ||P_j||_1  |
};

GuenaisReport guenais_test(const RieszSpec& mu, std::size_t nmax, std::size_t grid = 0);

// |S_n| on the grid: the stage-n approximant of sqrt(d mu / dz). The class-(L)
// hypothesis is not checkable at finite stage; callers record it as asserted.
std::vector<double> rn_sqrt_grid(const RieszSpec& mu, std::size_t n, std::size_t grid);

inline constexpr double kPhaseFloor = 1e-12;

struct PhaseGrid {
  std::vector<Complex> values;  // S_n/|S_n|, or 0 where undefined
  std::vector<bool> defined;    // |S_n| > floor
  std::size_t undefined_count = 0;
};

PhaseGrid phase_grid(const RieszSpec& mu, std::size_t n, std::size_t grid,
                     double floor = kPhaseFloor);

// k-th grid Fourier coefficient of the phase, undefined points excluded.
Complex phase_fourier_coefficient(const PhaseGrid& phase, std::int64_t k);

struct SupportBound {
  double d_hat = 1.0;                            // min L1 norm over evaluated subsets
  std::vector<std::vector<std::size_t>> subsets;  // evaluated J (1-based indices)
  std::vector<double> values;                     // matching L1 norms
};

// Upper bound for the support mass: minimum of ||prod_{j in J} P_j||_1 over
// singletons, pairs, then seeded random subsets, in a fixed order so a larger
// budget evaluates a superset.
SupportBound support_upper_bound(const RieszSpec& mu, std::size_t budget,
                                 std::uint64_t seed = 0);

struct Theorem615Row {
  double factor_l1 = 0.0;  // ||P_j||_1
  double weighted = 0.0;   // int g |P_j| dz / int g dz
};

// Per-factor hypothesis statistics for the singularity test against a
// nonnegative test function g sampled on the grid. No verdict is issued.
std::vector<Theorem615Row> theorem615_statistics(const RieszSpec& mu,
                                                 const std::vector<double>& g,
                                                 std::size_t nmax, std::size_t grid);

struct DichotomyReport {
  std::vector<std::size_t> stages;
  std::vector<double> affinity;         // vs nu, or vs Lebesgue when nu absent
  std::vector<double> bourgain_l1;
  std::vector<double> guenais_partial;
  double support_bound = 1.0;
  std::string verdict_hints;
  std::size_t grid = 0;
  bool stage_surrogate = true;  // nu replaced by its finite-stage density
  bool truncated = true;
};

DichotomyReport build_dichotomy_report(const RieszSpec& mu,
                                       const std::optional<RieszSpec>& nu, std::size_t nmax,
                                       std::size_t grid = 0, std::size_t budget = 0,
                                       std::uint64_t seed = 0);

}  // namespace riesz
