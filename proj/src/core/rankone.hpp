#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/products.hpp"
#include "core/trigpoly.hpp"

namespace riesz {

// One cutting-and-stacking stage: cut into m columns, put spacers[i] spacers
// on column i (no spacers above the last column), with level probabilities
// and unit-modulus phase constants (phases[0] = 1).
struct RankOneStage {
  std::int64_t m = 2;
  std::vector<std::int64_t> spacers;  // m-1 entries, each >= 0
  std::vector<double> probs;          // m entries > 0, sum 1; empty = uniform
  std::vector<Complex> phases;        // m entries, |c| = 1, c[0] = 1; empty = all ones
};

struct RankOneParams {
  std::vector<RankOneStage> stages;
};

void validate_params(const RankOneParams& params);

RankOneStage uniform_stage(std::int64_t m, std::vector<std::int64_t> spacers);

struct ReturnTimeTable {
  std::vector<std::int64_t> heights;               // h_0 = 1, h_1, ..., h_K
  std::vector<std::vector<std::int64_t>> returns;  // R_{i,k}, i = 1..m_k-1
};

// R_{i,k} = i*h_{k-1} + sum_{l<i} a_{l,k}; h_k = R_{m_k-1,k} + h_{k-1}.
// 64-bit overflow aborts with the offending stage.
ReturnTimeTable return_times(const RankOneParams& params);

// Stage-j factor: sqrt(p_i) c_{i,j} at exponent R_{i,j} (R_0 = 0), normalized.
// Exponents are stored positive; the spec carries reflected = true.
RieszSpec build_polynomials(const RankOneParams& params, std::size_t k);

struct OriginCheck {
  bool dynamical = false;
  bool purely = false;       // additionally all coefficients positive
  std::string violation;     // first violated condition, empty when dynamical
};

// Reconstructs return times from factor exponents and checks r_{1,j} >= h_{j-1}
// and r_{i+1,j} - r_{i,j} >= h_{j-1} under h_j = deg_j + h_{j-1}.
OriginCheck is_dynamical_origin(const RieszSpec& spec);

struct ReconstructedParams {
  std::vector<std::int64_t> m;
  std::vector<std::vector<std::int64_t>> spacers;
  std::vector<std::vector<double>> probs;
};

// Inverse of build_polynomials: m_k from term counts, spacers from return-time
// differences, probabilities from squared moduli.
ReconstructedParams reconstruct_params(const RieszSpec& spec);

struct LiftResult {
  RieszSpec spec;
  std::vector<std::int64_t> lift_exponents;  // N_j
};

// Substitutions z -> z^{N_j} with N_1 = 1 and N_{j+1} = multiplier*H_j + 1,
// H_j the cumulative degree bound; the result is checked dissociated and of
// dynamical origin before returning.
LiftResult dissociate_lift(const std::vector<TrigPoly>& ps, std::int64_t multiplier = 2);

struct FlatLiftResult {
  std::vector<std::size_t> selected;  // indices into the input list (0-based)
  std::vector<double> fractions;      // exceptional-set fraction per selection
  LiftResult lift;
};

// Selects stage k as the first unused input whose grid fraction of
// { z : ||p(z)| - 1| >= 2^-k } is at most 2^-k, then lifts the selection.
FlatLiftResult flat_lift_schedule(const std::vector<TrigPoly>& ps, std::size_t count,
                                  std::int64_t multiplier = 2);

// prod_{k<=K} max_i p_{i,k}: the truncated dissipativity product (a flag, not
// a dynamical classification).
double dissipativity_product(const RankOneParams& params, std::size_t k);

}  // namespace riesz
