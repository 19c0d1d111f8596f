#include "core/serialize.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace riesz {

namespace {

[[noreturn]] void bad_field(const std::string& what) {
  fail(Error::Code::invalid_argument, "spec json: " + what);
}

double require_double(const Json& j, const char* field) {
  if (!j.is_number()) bad_field(std::string(field) + " must be a number");
  return j.get<double>();
}

std::int64_t require_int(const Json& j, const char* field) {
  if (!j.is_number_integer()) bad_field(std::string(field) + " must be an integer");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> int_list(const Json& j, const char* field) {
  if (!j.is_array()) bad_field(std::string(field) + " must be an array");
  std::vector<std::int64_t> out;
  for (const auto& v : j) out.push_back(require_int(v, field));
  return out;
}

std::vector<double> double_list(const Json& j, const char* field) {
  if (!j.is_array()) bad_field(std::string(field) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(require_double(v, field));
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(Error::Code::invalid_argument, std::string("json parse error: ") + e.what());
  }
}

Json poly_to_json(const TrigPoly& p) {
  Json terms = Json::array();
  for (const Term& t : p.terms()) {
    terms.push_back({t.exponent, t.coeff.real(), t.coeff.imag()});
  }
  return Json{{"terms", std::move(terms)}};
}

TrigPoly poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms")) bad_field("polynomial needs a \"terms\" array");
  const Json& terms = j.at("terms");
  if (!terms.is_array()) bad_field("\"terms\" must be an array");
  std::vector<Term> out;
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() != 3) bad_field("each term must be [exponent, re, im]");
    out.push_back({require_int(t[0], "exponent"),
                   Complex(require_double(t[1], "re"), require_double(t[2], "im"))});
  }
  return TrigPoly(std::move(out));
}

Json spec_to_json(const RieszSpec& spec) {
  Json factors = Json::array();
  for (const TrigPoly& p : spec.factors) factors.push_back(poly_to_json(p));
  Json j{{"factors", std::move(factors)}};
  if (!spec.label.empty()) j["label"] = spec.label;
  if (spec.reflected) j["reflected"] = true;
  return j;
}

RieszSpec spec_from_json(const Json& j) {
  if (!j.is_object()) bad_field("spec must be an object");

  if (j.contains("generator")) {
    const std::string gen = j.at("generator").get<std::string>();
    if (gen == "classical_riesz") {
      if (!j.contains("thetas") || !j.contains("exponents")) {
        bad_field("classical_riesz needs \"thetas\" and \"exponents\"");
      }
      return classical_riesz(double_list(j.at("thetas"), "thetas"),
                             int_list(j.at("exponents"), "exponents"))
          .spec;
    }
    if (gen == "ledrappier") {
      if (!j.contains("heights") || !j.contains("spacers")) {
        bad_field("ledrappier needs \"heights\" and \"spacers\"");
      }
      return ledrappier_spec(int_list(j.at("heights"), "heights"),
                             int_list(j.at("spacers"), "spacers"));
    }
    if (gen == "rankone") {
      const RankOneParams params = rankone_params_from_json(j);
      const std::size_t k = j.contains("k")
                                ? static_cast<std::size_t>(require_int(j.at("k"), "k"))
                                : params.stages.size();
      return build_polynomials(params, k);
    }
    bad_field("unknown generator \"" + gen + "\"");
  }

  if (!j.contains("factors")) bad_field("spec needs \"factors\" or a \"generator\"");
  RieszSpec spec;
  for (const auto& f : j.at("factors")) spec.factors.push_back(poly_from_json(f));
  if (j.contains("label")) spec.label = j.at("label").get<std::string>();
  if (j.contains("reflected")) spec.reflected = j.at("reflected").get<bool>();
  validate_spec(spec);
  return spec;
}

Json rankone_params_to_json(const RankOneParams& params) {
  Json stages = Json::array();
  for (const RankOneStage& s : params.stages) {
    Json stage{{"m", s.m}, {"spacers", s.spacers}};
    if (!s.probs.empty()) stage["p"] = s.probs;
    if (!s.phases.empty()) {
      Json phases = Json::array();
      for (const Complex& c : s.phases) phases.push_back({c.real(), c.imag()});
      stage["phases"] = std::move(phases);
    }
    stages.push_back(std::move(stage));
  }
  return Json{{"generator", "rankone"}, {"stages", std::move(stages)}};
}

RankOneParams rankone_params_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("stages")) bad_field("rankone needs a \"stages\" array");
  RankOneParams params;
  for (const auto& s : j.at("stages")) {
    if (!s.is_object() || !s.contains("m") || !s.contains("spacers")) {
      bad_field("each stage needs \"m\" and \"spacers\"");
    }
    RankOneStage stage;
    stage.m = require_int(s.at("m"), "m");
    stage.spacers = int_list(s.at("spacers"), "spacers");
    if (s.contains("p")) stage.probs = double_list(s.at("p"), "p");
    if (s.contains("phases")) {
      for (const auto& c : s.at("phases")) {
        if (!c.is_array() || c.size() != 2) bad_field("each phase must be [re, im]");
        stage.phases.push_back(Complex(require_double(c[0], "phase re"),
                                       require_double(c[1], "phase im")));
      }
    }
    params.stages.push_back(std::move(stage));
  }
  validate_params(params);
  return params;
}

Json factorization_to_json(const Factorization& f) {
  Json roots = Json::array();
  for (const RootCluster& r : f.roots) {
    roots.push_back({r.location.real(), r.location.imag(), r.multiplicity});
  }
  Json inner_zeros = Json::array();
  for (const Complex& a : f.inner.zeros) inner_zeros.push_back({a.real(), a.imag()});
  return Json{{"roots", std::move(roots)},
              {"inside", f.inside},
              {"on_circle", f.on_circle},
              {"outside", f.outside},
              {"circle_distance", f.circle_distance},
              {"inner",
               {{"zeros", std::move(inner_zeros)},
                {"unimodular", {f.inner.unimodular.real(), f.inner.unimodular.imag()}}}},
              {"outer", poly_to_json(f.outer)},
              {"alpha", f.alpha},
              {"mahler", f.mahler}};
}

Json stage_diagnostics_to_json(const StageDiagnostics& d) {
  Json j{{"stage", d.stage},       {"degree", d.degree},
         {"b0", d.b0},             {"beta", d.beta},
         {"tail_c0", d.tail_c0},   {"margin", d.margin},
         {"mahler_product", d.mahler_product},
         {"truncated", d.truncated}};
  if (d.l1) {
    j["l1"] = *d.l1;
    j["l2_sq"] = d.l2_sq;
  } else {
    j["l1"] = nullptr;
    j["l2_sq"] = nullptr;
    j["grid_refused"] = true;
  }
  return j;
}

Json dichotomy_report_to_json(const DichotomyReport& r) {
  return Json{{"stages", r.stages},
              {"affinity", r.affinity},
              {"bourgain_l1", r.bourgain_l1},
              {"guenais_partial", r.guenais_partial},
              {"support_bound", r.support_bound},
              {"verdict_hints", r.verdict_hints},
              {"grid", r.grid},
              {"stage_surrogate", r.stage_surrogate},
              {"truncated", r.truncated}};
}

Json guenais_to_json(const GuenaisReport& r) {
  return Json{{"factor_l1", r.factor_l1},
              {"v", r.v},
              {"partial_sums", r.partial_sums},
              {"product_l1", r.product_l1},
              {"slack", r.slack}};
}

Json support_bound_to_json(const SupportBound& b) {
  return Json{{"d_hat", b.d_hat}, {"subsets", b.subsets}, {"values", b.values}};
}

Json flatness_metrics_to_json(const FlatnessMetrics& m) {
  Json j{{"l1_over_l2", m.l1_over_l2},
         {"mahler_over_l2", m.mahler_over_l2},
         {"sup_deviation", m.sup_deviation},
         {"max_normalized_coeff", m.max_normalized_coeff},
         {"classes", Json::array()}};
  auto& classes = j["classes"];
  if (m.class_unimodular) classes.push_back("U");
  if (m.class_zero_one) classes.push_back("B");
  if (m.class_a_lambda) classes.push_back("A_lambda");
  if (m.class_littlewood) classes.push_back("littlewood");
  if (m.class_rankone_form) classes.push_back("R");
  if (m.lambda) j["lambda"] = *m.lambda;
  return j;
}

Json gaussian_experiment_to_json(const GaussianExperiment& g, std::int64_t m,
                                 std::size_t trials, std::uint64_t seed) {
  return Json{{"m", m},
              {"trials", trials},
              {"seed", seed},
              {"mean", g.mean},
              {"stddev", g.stddev},
              {"target", g.target},
              {"deviation", g.deviation}};
}

Json annulus_check_to_json(const AnnulusCheck& c) {
  Json roots = Json::array();
  for (const RootCluster& r : c.roots) {
    roots.push_back({r.location.real(), r.location.imag(), r.multiplicity});
  }
  return Json{{"roots", std::move(roots)},
              {"lower", c.lower},
              {"upper", c.upper},
              {"violations", c.violations},
              {"bm", c.bm},
              {"refined_lower", c.refined_lower},
              {"refined_upper", c.refined_upper},
              {"refined_violations", c.refined_violations}};
}

Json zero_one_check_to_json(const ZeroOneCheck& c) {
  Json roots = Json::array();
  for (const RootCluster& r : c.roots) {
    roots.push_back({r.location.real(), r.location.imag(), r.multiplicity});
  }
  return Json{{"roots", std::move(roots)},
              {"lower", c.lower},
              {"upper", c.upper},
              {"violations", c.violations}};
}

Json cluster_count_to_json(const ClusterCount& c) {
  return Json{{"count", c.count},
              {"threshold", c.threshold},
              {"delta", c.delta},
              {"meets_threshold", c.meets_threshold},
              {"note", "informational: a shortfall flags root-finder resolution, not a refutation"}};
}

Json return_time_table_to_json(const ReturnTimeTable& t) {
  return Json{{"heights", t.heights}, {"returns", t.returns}};
}

Json corollary25_to_json(const Corollary25Schedule& s) {
  return Json{{"indices", s.indices}, {"margins", s.margins}};
}

}  // namespace riesz
