#pragma once

#include <json.hpp>

#include "core/dichotomy.hpp"
#include "core/factorization.hpp"
#include "core/flatness.hpp"
#include "core/products.hpp"
#include "core/rankone.hpp"
#include "core/trigpoly.hpp"

namespace riesz {

using Json = nlohmann::json;

// {"terms": [[exponent, re, im], ...]} with exponents ascending.
Json poly_to_json(const TrigPoly& p);
TrigPoly poly_from_json(const Json& j);

// Explicit factor lists or generator stanzas ("classical_riesz",
// "ledrappier", "rankone").
Json spec_to_json(const RieszSpec& spec);
RieszSpec spec_from_json(const Json& j);

Json rankone_params_to_json(const RankOneParams& params);
RankOneParams rankone_params_from_json(const Json& j);

Json factorization_to_json(const Factorization& f);
Json stage_diagnostics_to_json(const StageDiagnostics& d);
Json dichotomy_report_to_json(const DichotomyReport& r);
Json guenais_to_json(const GuenaisReport& r);
Json support_bound_to_json(const SupportBound& b);
Json flatness_metrics_to_json(const FlatnessMetrics& m);
Json gaussian_experiment_to_json(const GaussianExperiment& g, std::int64_t m,
                                 std::size_t trials, std::uint64_t seed);
Json annulus_check_to_json(const AnnulusCheck& c);
Json zero_one_check_to_json(const ZeroOneCheck& c);
Json cluster_count_to_json(const ClusterCount& c);
Json return_time_table_to_json(const ReturnTimeTable& t);
Json corollary25_to_json(const Corollary25Schedule& s);

// Wraps nlohmann parse errors into Error{invalid_argument} with position info.
Json parse_json(const std::string& text);

}  // namespace riesz
