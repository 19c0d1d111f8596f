// Batch driver for the generalized Riesz product engine. Every number in the
// output comes from one C API call; this file only parses flags, formats
// tables, and writes files.

#include <cstdint>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riesz/riesz.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void die(int code, const std::string& message) { throw CliError{code, message}; }

// Failures while loading/validating inputs and grid-floor violations are
// config errors; everything else inside an analysis is numerical.
void check(riesz_status st, bool loading) {
  if (st == RIESZ_OK) return;
  const std::string msg = riesz_last_error();
  if (loading || st == RIESZ_ERR_INVALID_ARGUMENT || st == RIESZ_ERR_GRID) {
    die(kExitConfig, msg);
  }
  die(kExitNumeric, msg);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash(const json& config) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

// --spec accepts inline JSON (starts with '{') or a file path.
std::string load_text(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ifstream in(arg);
  if (!in) die(kExitConfig, "cannot open input file: " + arg);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SpecHandle {
  riesz_spec* s = nullptr;
  ~SpecHandle() { riesz_spec_free(s); }
};

struct PolyHandle {
  riesz_poly* p = nullptr;
  ~PolyHandle() { riesz_poly_free(p); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { riesz_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

SpecHandle load_spec(const std::string& arg) {
  SpecHandle h;
  check(riesz_spec_from_json(load_text(arg).c_str(), &h.s), /*loading=*/true);
  return h;
}

PolyHandle load_poly(const std::string& arg) {
  PolyHandle h;
  check(riesz_poly_from_json(load_text(arg).c_str(), &h.p), /*loading=*/true);
  return h;
}

std::pair<std::size_t, std::size_t> parse_stage_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::size_t n = std::strtoull(text.c_str(), nullptr, 10);
    if (n == 0) die(kExitConfig, "stages must be positive (got \"" + text + "\")");
    return {n, n};
  }
  const std::size_t a = std::strtoull(text.substr(0, dots).c_str(), nullptr, 10);
  const std::size_t b = std::strtoull(text.substr(dots + 2).c_str(), nullptr, 10);
  if (a == 0 || b < a) die(kExitConfig, "bad stage range \"" + text + "\"");
  return {a, b};
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) die(kExitConfig, "cannot open output file: " + path);
  out << content;
}

std::string csv_footer(const json& config, std::size_t grid, std::size_t stage) {
  std::ostringstream ss;
  ss << "# config_hash=" << config_hash(config) << "\n";
  ss << "# version=" << riesz_version() << "\n";
  if (grid) ss << "# grid=" << grid << "\n";
  if (stage) ss << "# stage=" << stage << "\n";
  return ss.str();
}

json meta_json(const json& config, std::size_t grid, std::size_t stage) {
  json m{{"config_hash", config_hash(config)}, {"version", riesz_version()}};
  if (grid) m["grid"] = grid;
  if (stage) m["stage"] = stage;
  return m;
}

unsigned env_threads() {
  const char* env = std::getenv("RIESZ_THREADS");
  if (!env) return 1;
  const long v = std::strtol(env, nullptr, 10);
  return v >= 1 ? static_cast<unsigned>(v) : 1;
}

std::size_t spec_stage_or_die(const riesz_spec* spec, std::size_t stage) {
  std::size_t count = 0;
  check(riesz_spec_stage_count(spec, &count), true);
  if (stage < 1 || stage > count) {
    die(kExitConfig, "stage " + std::to_string(stage) + " outside 1.." + std::to_string(count));
  }
  return count;
}

// ---------------------------------------------------------------------------

struct CommonArgs {
  std::string spec;
  std::string out;
  std::string format = "csv";
  std::size_t grid = 0;
  std::uint64_t seed = 0;
  std::string stages = "1";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_stages = true) {
  cmd->add_option("--spec", args.spec, "input spec: file path or inline JSON")->required();
  cmd->add_option("--out", args.out, "output path (default stdout)");
  cmd->add_option("--format", args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--grid", args.grid, "grid size override");
  cmd->add_option("--seed", args.seed, "random seed");
  if (with_stages) {
    cmd->add_option("--stages,--stage", args.stages, "stage or range a..b");
  }
}

json base_config(const std::string& command, const CommonArgs& args) {
  return json{{"command", command}, {"spec", args.spec},       {"format", args.format},
              {"grid", args.grid},  {"stages", args.stages},   {"seed", args.seed}};
}

void run_density(const CommonArgs& args) {
  auto spec = load_spec(args.spec);
  const auto [stage, stage_hi] = parse_stage_range(args.stages);
  if (stage != stage_hi) die(kExitConfig, "density takes a single stage");
  spec_stage_or_die(spec.s, stage);

  int64_t degree = 0;
  check(riesz_spec_degree(spec.s, stage, &degree), true);
  std::size_t grid = args.grid;
  if (grid == 0) check(riesz_default_grid(degree, &grid), true);

  std::vector<double> density(grid);
  check(riesz_density_grid(spec.s, stage, grid, density.data()), false);

  // Mean check from the library (Parseval sum of the partial product).
  OwnedString diag;
  check(riesz_stage_diagnostics_json(spec.s, stage, &diag.s), false);
  const json dj = json::parse(diag.str());

  const json config = base_config("density", args);
  if (args.format == "json") {
    json j{{"meta", meta_json(config, grid, stage)},
           {"density", density},
           {"mean", dj["l2_sq"]}};
    write_output(args.out, j.dump(2) + "\n");
    return;
  }
  std::ostringstream ss;
  ss << "k,angle,density\n";
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (std::size_t k = 0; k < grid; ++k) {
    ss << k << ',' << fmt17(kTwoPi * double(k) / double(grid)) << ',' << fmt17(density[k])
       << '\n';
  }
  if (!dj["l2_sq"].is_null()) ss << "# mean=" << fmt17(dj["l2_sq"].get<double>()) << "\n";
  ss << csv_footer(config, grid, stage);
  write_output(args.out, ss.str());
}

void run_fourier(const CommonArgs& args, std::int64_t kmax) {
  auto spec = load_spec(args.spec);
  const auto [stage, stage_hi] = parse_stage_range(args.stages);
  if (stage != stage_hi) die(kExitConfig, "fourier takes a single stage");
  spec_stage_or_die(spec.s, stage);
  if (kmax < 0) die(kExitConfig, "negative Fourier indices are rejected: S_n is analytic");

  std::vector<double> re(static_cast<std::size_t>(kmax) + 1), im(re.size());
  check(riesz_fourier_coefficients(spec.s, stage, kmax, re.data(), im.data()), false);

  const json config = base_config("fourier", args);
  if (args.format == "json") {
    json coef = json::array();
    for (std::size_t j = 0; j < re.size(); ++j) coef.push_back({re[j], im[j]});
    write_output(args.out,
                 json{{"meta", meta_json(config, 0, stage)}, {"coefficients", coef}}.dump(2) +
                     "\n");
    return;
  }
  std::ostringstream ss;
  ss << "j,re,im\n";
  for (std::size_t j = 0; j < re.size(); ++j) {
    ss << j << ',' << fmt17(re[j]) << ',' << fmt17(im[j]) << '\n';
  }
  ss << csv_footer(config, 0, stage);
  write_output(args.out, ss.str());
}

void run_diagnostics(const CommonArgs& args) {
  auto spec = load_spec(args.spec);
  auto [lo, hi] = parse_stage_range(args.stages);
  spec_stage_or_die(spec.s, hi);

  json rows = json::array();
  for (std::size_t n = lo; n <= hi; ++n) {
    OwnedString row;
    check(riesz_stage_diagnostics_json(spec.s, n, &row.s), false);
    rows.push_back(json::parse(row.str()));
  }
  const json config = base_config("diagnostics", args);
  if (args.format == "json") {
    write_output(args.out,
                 json{{"meta", meta_json(config, 0, hi)}, {"stages", rows}}.dump(2) + "\n");
    return;
  }
  std::ostringstream ss;
  ss << "stage,degree,b0,beta,tail_c0,margin,mahler_product,l1,l2_sq\n";
  for (const auto& r : rows) {
    ss << r["stage"].get<std::size_t>() << ',' << r["degree"].get<std::int64_t>() << ','
       << fmt17(r["b0"].get<double>()) << ',' << fmt17(r["beta"].get<double>()) << ','
       << fmt17(r["tail_c0"].get<double>()) << ',' << fmt17(r["margin"].get<double>()) << ','
       << fmt17(r["mahler_product"].get<double>()) << ','
       << (r["l1"].is_null() ? "refused" : fmt17(r["l1"].get<double>())) << ','
       << (r["l2_sq"].is_null() ? "refused" : fmt17(r["l2_sq"].get<double>())) << '\n';
  }
  ss << csv_footer(config, 0, hi);
  write_output(args.out, ss.str());
}

void run_mahler(const CommonArgs& args, bool jensen_check) {
  auto spec = load_spec(args.spec);
  auto [lo, hi] = parse_stage_range(args.stages);
  spec_stage_or_die(spec.s, hi);

  const json config = base_config("mahler", args);
  std::ostringstream ss;
  json rows = json::array();
  ss << (jensen_check ? "stage,mahler_product,jensen_sq\n" : "stage,mahler_product\n");
  for (std::size_t n = lo; n <= hi; ++n) {
    double mp = 0.0;
    check(riesz_mahler_of_product(spec.s, n, &mp), false);
    json row{{"stage", n}, {"mahler_product", mp}};
    ss << n << ',' << fmt17(mp);
    if (jensen_check) {
      double js = 0.0;
      check(riesz_mahler_of_product_jensen(spec.s, n, args.grid, &js), false);
      row["jensen_sq"] = js;
      ss << ',' << fmt17(js);
    }
    ss << '\n';
    rows.push_back(std::move(row));
  }
  if (args.format == "json") {
    write_output(args.out,
                 json{{"meta", meta_json(config, args.grid, hi)}, {"rows", rows}}.dump(2) +
                     "\n");
    return;
  }
  ss << csv_footer(config, args.grid, hi);
  write_output(args.out, ss.str());
}

void run_sequence(const char* name, const CommonArgs& args, const std::string& nu_arg) {
  auto spec = load_spec(args.spec);
  auto [lo, hi] = parse_stage_range(args.stages);
  spec_stage_or_die(spec.s, hi);

  std::vector<double> values(hi);
  std::size_t grid_used = 0;
  double discrepancy = 0.0;
  if (!nu_arg.empty()) {
    auto nu = load_spec(nu_arg);
    spec_stage_or_die(nu.s, hi);
    check(riesz_affinity_sequence(spec.s, nu.s, hi, args.grid, values.data(), &grid_used,
                                  &discrepancy),
          false);
  } else {
    check(riesz_bourgain_sequence(spec.s, hi, args.grid, values.data(), &grid_used,
                                  &discrepancy),
          false);
  }

  json config = base_config(name, args);
  if (!nu_arg.empty()) config["nu"] = nu_arg;
  if (args.format == "json") {
    json j{{"meta", meta_json(config, grid_used, hi)},
           {"values", std::vector<double>(values.begin() + lo - 1, values.end())},
           {"first_stage", lo},
           {"quadrature_discrepancy", discrepancy},
           {"stage_surrogate", true}};
    write_output(args.out, j.dump(2) + "\n");
    return;
  }
  std::ostringstream ss;
  ss << "stage," << name << "\n";
  for (std::size_t n = lo; n <= hi; ++n) ss << n << ',' << fmt17(values[n - 1]) << '\n';
  ss << "# stage_surrogate=true\n";
  ss << "# quadrature_discrepancy=" << fmt17(discrepancy) << "\n";
  ss << csv_footer(config, grid_used, hi);
  write_output(args.out, ss.str());
}

void run_guenais(const CommonArgs& args) {
  auto spec = load_spec(args.spec);
  auto [lo, hi] = parse_stage_range(args.stages);
  (void)lo;
  spec_stage_or_die(spec.s, hi);
  OwnedString rep;
  check(riesz_guenais_json(spec.s, hi, args.grid, &rep.s), false);
  const json r = json::parse(rep.str());
  const json config = base_config("guenais", args);
  if (args.format == "json") {
    write_output(args.out,
                 json{{"meta", meta_json(config, args.grid, hi)}, {"report", r}}.dump(2) +
                     "\n");
    return;
  }
  std::ostringstream ss;
  ss << "stage,factor_l1,v,partial_sum,product_l1,slack\n";
  for (std::size_t n = 0; n < hi; ++n) {
    ss << (n + 1) << ',' << fmt17(r["factor_l1"][n].get<double>()) << ','
       << fmt17(r["v"][n].get<double>()) << ',' << fmt17(r["partial_sums"][n].get<double>())
       << ',' << fmt17(r["product_l1"][n].get<double>()) << ','
       << fmt17(r["slack"][n].get<double>()) << '\n';
  }
  ss << csv_footer(config, args.grid, hi);
  write_output(args.out, ss.str());
}

void run_rn_sqrt(const CommonArgs& args, bool class_l_asserted) {
  auto spec = load_spec(args.spec);
  const auto [stage, stage_hi] = parse_stage_range(args.stages);
  if (stage != stage_hi) die(kExitConfig, "rn-sqrt takes a single stage");
  spec_stage_or_die(spec.s, stage);

  int64_t degree = 0;
  check(riesz_spec_degree(spec.s, stage, &degree), true);
  std::size_t grid = args.grid;
  if (grid == 0) check(riesz_default_grid(degree, &grid), true);
  std::vector<double> values(grid);
  check(riesz_rn_sqrt_grid(spec.s, stage, grid, values.data()), false);

  json config = base_config("rn-sqrt", args);
  config["class_l_asserted"] = class_l_asserted;
  if (args.format == "json") {
    json j{{"meta", meta_json(config, grid, stage)},
           {"values", values},
           {"class_l_asserted", class_l_asserted},
           {"stage_surrogate", true}};
    write_output(args.out, j.dump(2) + "\n");
    return;
  }
  std::ostringstream ss;
  ss << "k,rn_sqrt\n";
  for (std::size_t k = 0; k < grid; ++k) ss << k << ',' << fmt17(values[k]) << '\n';
  ss << "# class_l_asserted=" << (class_l_asserted ? "true" : "false") << "\n";
  ss << "# stage_surrogate=true\n";
  ss << csv_footer(config, grid, stage);
  write_output(args.out, ss.str());
}

void run_phase(const CommonArgs& args, const std::vector<std::int64_t>& fourier_ks) {
  auto spec = load_spec(args.spec);
  const auto [stage, stage_hi] = parse_stage_range(args.stages);
  if (stage != stage_hi) die(kExitConfig, "phase takes a single stage");
  spec_stage_or_die(spec.s, stage);

  int64_t degree = 0;
  check(riesz_spec_degree(spec.s, stage, &degree), true);
  std::size_t grid = args.grid;
  if (grid == 0) check(riesz_default_grid(degree, &grid), true);

  std::vector<double> re(grid), im(grid);
  std::vector<std::uint8_t> defined(grid);
  std::size_t undefined = 0;
  check(riesz_phase_grid(spec.s, stage, grid, 0.0, re.data(), im.data(), defined.data(),
                         &undefined),
        false);

  json coefs = json::array();
  for (std::int64_t k : fourier_ks) {
    double cre = 0.0, cim = 0.0;
    check(riesz_phase_fourier_coefficient(spec.s, stage, grid, 0.0, k, &cre, &cim), false);
    coefs.push_back({{"k", k}, {"re", cre}, {"im", cim}});
  }

  const json config = base_config("phase", args);
  if (args.format == "json") {
    json values = json::array();
    for (std::size_t k = 0; k < grid; ++k) {
      values.push_back({{"re", re[k]}, {"im", im[k]}, {"defined", defined[k] != 0}});
    }
    json j{{"meta", meta_json(config, grid, stage)},
           {"undefined_count", undefined},
           {"fourier", coefs},
           {"values", values}};
    write_output(args.out, j.dump(2) + "\n");
    return;
  }
  std::ostringstream ss;
  ss << "k,re,im,defined\n";
  for (std::size_t k = 0; k < grid; ++k) {
    ss << k << ',' << fmt17(re[k]) << ',' << fmt17(im[k]) << ',' << int(defined[k]) << '\n';
  }
  ss << "# undefined_count=" << undefined << "\n";
  for (const auto& c : coefs) {
    ss << "# phase_fourier_k" << c["k"].get<std::int64_t>() << "="
       << fmt17(c["re"].get<double>()) << (c["im"].get<double>() < 0 ? "" : "+")
       << fmt17(c["im"].get<double>()) << "i\n";
  }
  ss << csv_footer(config, grid, stage);
  write_output(args.out, ss.str());
}

void run_support_bound(const CommonArgs& args, std::size_t budget) {
  auto spec = load_spec(args.spec);
  OwnedString rep;
  check(riesz_support_bound_json(spec.s, budget, args.seed, &rep.s), false);
  const json r = json::parse(rep.str());
  const json config = base_config("support-bound", args);
  if (args.format == "json") {
    write_output(args.out,
                 json{{"meta", meta_json(config, 0, 0)}, {"report", r}}.dump(2) + "\n");
    return;
  }
  std::ostringstream ss;
  ss << "subset,l1\n";
  for (std::size_t i = 0; i < r["subsets"].size(); ++i) {
    std::string subset;
    for (const auto& idx : r["subsets"][i]) {
      if (!subset.empty()) subset += ' ';
      subset += std::to_string(idx.get<std::size_t>());
    }
    ss << '"' << subset << '"' << ',' << fmt17(r["values"][i].get<double>()) << '\n';
  }
  ss << "# d_hat=" << fmt17(r["d_hat"].get<double>()) << "\n";
  ss << csv_footer(config, 0, 0);
  write_output(args.out, ss.str());
}

void print_fixed_table(const json& rep, std::ostream& os) {
  os << "stage      affinity      bourgain_l1   guenais_sum\n";
  const auto& stages = rep["stages"];
  for (std::size_t i = 0; i < stages.size(); ++i) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-10zu %-13.6f %-13.6f %-13.6f\n",
                  stages[i].get<std::size_t>(), rep["affinity"][i].get<double>(),
                  rep["bourgain_l1"][i].get<double>(), rep["guenais_partial"][i].get<double>());
    os << line;
  }
  os << "support_bound " << fmt17(rep["support_bound"].get<double>()) << "\n";
  os << "hints: " << rep["verdict_hints"].get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Riesz product engine"};
  app.require_subcommand(1);

  CommonArgs density_args, fourier_args, diag_args, mahler_args, affinity_args, bourgain_args,
      guenais_args, rn_args, phase_args, support_args, contract_args, validate_args,
      dichotomy_args;

  auto* density = app.add_subcommand("density", "|S_n|^2 sampled on the grid");
  add_common(density, density_args);

  std::int64_t kmax = 16;
  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients of S_n");
  add_common(fourier, fourier_args);
  fourier->add_option("--kmax", kmax, "largest coefficient index");

  auto* diagnostics = app.add_subcommand("diagnostics", "per-stage constant-term diagnostics");
  add_common(diagnostics, diag_args);

  bool mahler_jensen = false;
  auto* mahler = app.add_subcommand("mahler", "Mahler measure of the product per stage");
  add_common(mahler, mahler_args);
  mahler->add_flag("--jensen", mahler_jensen, "cross-check against the quadrature route");

  std::string affinity_nu;
  auto* affinity = app.add_subcommand("affinity", "stage affinity against a second product");
  add_common(affinity, affinity_args);
  affinity->add_option("--nu", affinity_nu, "second spec (file or inline JSON)")->required();

  auto* bourgain = app.add_subcommand("bourgain", "L1 norms of the partial products");
  add_common(bourgain, bourgain_args);

  auto* guenais = app.add_subcommand("guenais", "factor L1 norms and telescoping sums");
  add_common(guenais, guenais_args);

  bool class_l = false;
  auto* rn = app.add_subcommand("rn-sqrt", "|S_n| as the sqrt density approximant");
  add_common(rn, rn_args);
  rn->add_flag("--class-l", class_l, "record the class-(L) assumption as asserted");

  std::vector<std::int64_t> phase_ks;
  auto* phase = app.add_subcommand("phase", "phase function S_n/|S_n| on the grid");
  add_common(phase, phase_args);
  phase->add_option("--fourier", phase_ks, "phase Fourier coefficient indices");

  std::size_t budget = 32;
  auto* support = app.add_subcommand("support-bound", "minimum subproduct L1 norm");
  add_common(support, support_args, /*with_stages=*/false);
  support->add_option("--budget", budget, "number of subsets to evaluate");

  auto* dichotomy = app.add_subcommand("dichotomy", "combined report with a summary table");
  dichotomy_args.format = "table";
  add_common(dichotomy, dichotomy_args);
  dichotomy->get_option("--format")->check(CLI::IsMember({"table", "csv", "json"}));
  std::string dichotomy_nu;
  dichotomy->add_option("--nu", dichotomy_nu, "second spec (optional)");

  // rankone build|check|lift
  auto* rankone = app.add_subcommand("rankone", "rank-one constructions");
  rankone->require_subcommand(1);
  CommonArgs rk_build_args, rk_check_args, rk_lift_args;
  std::size_t rk_stages = 0;
  auto* rk_build = rankone->add_subcommand("build", "spectral factors from cutting parameters");
  add_common(rk_build, rk_build_args, false);
  rk_build->add_option("--k", rk_stages, "number of stages to build (default all)");
  auto* rk_check = rankone->add_subcommand("check", "dynamical-origin conditions");
  add_common(rk_check, rk_check_args, false);
  std::int64_t rk_mult = 2;
  auto* rk_lift = rankone->add_subcommand("lift", "dissociation lift of a polynomial list");
  add_common(rk_lift, rk_lift_args, false);
  rk_lift->add_option("--multiplier", rk_mult, "lift multiplier (>= 2)");

  // flatness metrics|barker|gaussian|zeros
  auto* flatness = app.add_subcommand("flatness", "flatness metrics and zero bounds");
  flatness->require_subcommand(1);
  CommonArgs fl_metrics_args, fl_barker_args, fl_gauss_args, fl_zeros_args;
  double fl_lambda = -1.0;
  auto* fl_metrics = flatness->add_subcommand("metrics", "L1/L2, Mahler/L2, class tags");
  add_common(fl_metrics, fl_metrics_args, false);
  fl_metrics->add_option("--lambda", fl_lambda, "test membership in A_lambda");

  auto* fl_barker = flatness->add_subcommand("barker", "verify Barker sequences");
  std::string barker_seq;
  fl_barker->add_option("--seq", barker_seq, "comma-separated +-1 signs (default: catalog)");
  fl_barker->add_option("--out", fl_barker_args.out, "output path");
  fl_barker->add_option("--format", fl_barker_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::int64_t gauss_m = 400;
  std::size_t gauss_trials = 50;
  auto* fl_gauss = flatness->add_subcommand("gaussian", "L1 norms of random rank-one stages");
  fl_gauss->add_option("--m", gauss_m, "cutting size")->required();
  fl_gauss->add_option("--trials", gauss_trials, "number of trials")->required();
  fl_gauss->add_option("--seed", fl_gauss_args.seed, "random seed");
  fl_gauss->add_option("--grid", fl_gauss_args.grid, "grid size override");
  fl_gauss->add_option("--out", fl_gauss_args.out, "output path");
  fl_gauss->add_option("--format", fl_gauss_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* fl_zeros = flatness->add_subcommand("zeros", "zero location checks");
  add_common(fl_zeros, fl_zeros_args, false);
  std::int64_t zeros_h = 0;
  bool zeros_zero_one = false;
  std::vector<double> zeros_cluster;
  double zeros_delta = -1.0;
  fl_zeros->add_option("--height", zeros_h, "base height for the rank-one annulus bound");
  fl_zeros->add_flag("--zero-one", zeros_zero_one, "golden-ratio annulus for 0/1 coefficients");
  fl_zeros->add_option("--cluster", zeros_cluster, "circle point re,im for root counting")
      ->expected(2);
  fl_zeros->add_option("--delta", zeros_delta, "explicit cluster radius");

  CommonArgs contract_cmd_args;
  std::int64_t contract_q = 1;
  auto* contract = app.add_subcommand("contract", "substitute z -> z^q in every factor");
  add_common(contract, contract_cmd_args, false);
  contract->add_option("--q", contract_q, "contraction order")->required();

  auto* validate = app.add_subcommand("validate", "schema and cross-field checks only");
  add_common(validate, validate_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*density) run_density(density_args);
    if (*fourier) run_fourier(fourier_args, kmax);
    if (*diagnostics) run_diagnostics(diag_args);
    if (*mahler) run_mahler(mahler_args, mahler_jensen);
    if (*affinity) run_sequence("affinity", affinity_args, affinity_nu);
    if (*bourgain) run_sequence("bourgain_l1", bourgain_args, "");
    if (*guenais) run_guenais(guenais_args);
    if (*rn) run_rn_sqrt(rn_args, class_l);
    if (*phase) run_phase(phase_args, phase_ks);
    if (*support) run_support_bound(support_args, budget);

    if (*dichotomy) {
      auto spec = load_spec(dichotomy_args.spec);
      auto [lo, hi] = parse_stage_range(dichotomy_args.stages);
      (void)lo;
      spec_stage_or_die(spec.s, hi);
      SpecHandle nu;
      if (!dichotomy_nu.empty()) nu = load_spec(dichotomy_nu);
      OwnedString rep;
      check(riesz_dichotomy_report_json(spec.s, nu.s, hi, dichotomy_args.grid, budget,
                                        dichotomy_args.seed, &rep.s),
            false);
      const json rj = json::parse(rep.str());
      json config = base_config("dichotomy", dichotomy_args);
      if (dichotomy_args.format == "json") {
        write_output(dichotomy_args.out,
                     json{{"meta", meta_json(config, rj["grid"].get<std::size_t>(), hi)},
                          {"report", rj}}
                             .dump(2) +
                         "\n");
      } else if (dichotomy_args.format == "csv") {
        std::ostringstream ss;
        ss << "stage,affinity,bourgain_l1,guenais_partial\n";
        for (std::size_t i = 0; i < rj["stages"].size(); ++i) {
          ss << rj["stages"][i].get<std::size_t>() << ','
             << fmt17(rj["affinity"][i].get<double>()) << ','
             << fmt17(rj["bourgain_l1"][i].get<double>()) << ','
             << fmt17(rj["guenais_partial"][i].get<double>()) << '\n';
        }
        ss << "# support_bound=" << fmt17(rj["support_bound"].get<double>()) << "\n";
        ss << "# stage_surrogate=true\n";
        ss << csv_footer(config, rj["grid"].get<std::size_t>(), hi);
        write_output(dichotomy_args.out, ss.str());
      } else {
        std::ostringstream ss;
        print_fixed_table(rj, ss);
        ss << csv_footer(config, rj["grid"].get<std::size_t>(), hi);
        write_output(dichotomy_args.out, ss.str());
      }
    }

    if (*rk_build) {
      riesz_rankone* params = nullptr;
      check(riesz_rankone_from_json(load_text(rk_build_args.spec).c_str(), &params), true);
      std::size_t count = 0;
      check(riesz_rankone_stage_count(params, &count), true);
      const std::size_t k = rk_stages ? rk_stages : count;
      SpecHandle spec;
      const riesz_status st = riesz_rankone_build(params, k, &spec.s);
      OwnedString table;
      if (st == RIESZ_OK) check(riesz_return_times_json(params, &table.s), false);
      riesz_rankone_free(params);
      check(st, false);
      OwnedString spec_json;
      check(riesz_spec_to_json(spec.s, &spec_json.s), false);
      json config = base_config("rankone build", rk_build_args);
      json j{{"meta", meta_json(config, 0, k)},
             {"spec", json::parse(spec_json.str())},
             {"return_times", json::parse(table.str())}};
      write_output(rk_build_args.out, j.dump(2) + "\n");
    }

    if (*rk_check) {
      auto spec = load_spec(rk_check_args.spec);
      int dyn = 0, purely = 0;
      OwnedString violation;
      check(riesz_dynamical_origin(spec.s, &dyn, &purely, &violation.s), false);
      OwnedString rec;
      check(riesz_reconstruct_params_json(spec.s, &rec.s), false);
      json config = base_config("rankone check", rk_check_args);
      json j{{"meta", meta_json(config, 0, 0)},
             {"dynamical", dyn == 1},
             {"purely_dynamical", purely == 1},
             {"reconstructed", json::parse(rec.str())}};
      if (violation.s) j["violation"] = violation.str();
      write_output(rk_check_args.out, j.dump(2) + "\n");
    }

    if (*rk_lift) {
      const json input = json::parse(load_text(rk_lift_args.spec));
      if (!input.contains("polys") || !input["polys"].is_array() || input["polys"].empty()) {
        die(kExitConfig, "lift input needs a nonempty \"polys\" array");
      }
      std::vector<PolyHandle> polys(input["polys"].size());
      std::vector<const riesz_poly*> raw;
      for (std::size_t i = 0; i < polys.size(); ++i) {
        check(riesz_poly_from_json(input["polys"][i].dump().c_str(), &polys[i].p), true);
        raw.push_back(polys[i].p);
      }
      SpecHandle lifted;
      std::vector<std::int64_t> exps(polys.size());
      check(riesz_dissociate_lift(raw.data(), raw.size(), rk_mult, &lifted.s, exps.data()),
            false);
      OwnedString spec_json;
      check(riesz_spec_to_json(lifted.s, &spec_json.s), false);
      json config = base_config("rankone lift", rk_lift_args);
      json j{{"meta", meta_json(config, 0, 0)},
             {"lift_exponents", exps},
             {"spec", json::parse(spec_json.str())}};
      write_output(rk_lift_args.out, j.dump(2) + "\n");
    }

    if (*fl_metrics) {
      auto poly = load_poly(fl_metrics_args.spec);
      OwnedString rep;
      check(riesz_flatness_metrics_json(poly.p, fl_metrics_args.grid, fl_lambda, &rep.s),
            false);
      json config = base_config("flatness metrics", fl_metrics_args);
      json j{{"meta", meta_json(config, fl_metrics_args.grid, 0)},
             {"metrics", json::parse(rep.str())}};
      write_output(fl_metrics_args.out, j.dump(2) + "\n");
    }

    if (*fl_barker) {
      json config{{"command", "flatness barker"}, {"seq", barker_seq}};
      json rows = json::array();
      auto verify_one = [&](const std::vector<int>& signs) {
        double corr = 0.0;
        int ok = 0;
        check(riesz_verify_barker(signs.data(), signs.size(), &corr, &ok), false);
        rows.push_back({{"length", signs.size()},
                        {"max_correlation", corr},
                        {"is_barker", ok == 1}});
      };
      if (!barker_seq.empty()) {
        std::vector<int> signs;
        std::stringstream ss(barker_seq);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          if (tok == "+" || tok == "+1" || tok == "1") {
            signs.push_back(1);
          } else if (tok == "-" || tok == "-1") {
            signs.push_back(-1);
          } else {
            die(kExitConfig, "bad sign token \"" + tok + "\"");
          }
        }
        verify_one(signs);
      } else {
        OwnedString catalog;
        check(riesz_barker_catalog_json(&catalog.s), false);
        for (const auto& entry : json::parse(catalog.str())) {
          verify_one(entry["signs"].get<std::vector<int>>());
        }
      }
      if (fl_barker_args.format == "json") {
        write_output(fl_barker_args.out,
                     json{{"meta", meta_json(config, 0, 0)}, {"rows", rows}}.dump(2) + "\n");
      } else {
        std::ostringstream ss;
        ss << "length,max_correlation,is_barker\n";
        for (const auto& r : rows) {
          ss << r["length"].get<std::size_t>() << ','
             << fmt17(r["max_correlation"].get<double>()) << ','
             << (r["is_barker"].get<bool>() ? 1 : 0) << '\n';
        }
        ss << csv_footer(config, 0, 0);
        write_output(fl_barker_args.out, ss.str());
      }
    }

    if (*fl_gauss) {
      std::vector<double> trials(gauss_trials);
      OwnedString summary;
      check(riesz_gaussian_experiment(gauss_m, gauss_trials, fl_gauss_args.seed,
                                      fl_gauss_args.grid, env_threads(), trials.data(),
                                      &summary.s),
            false);
      json config{{"command", "flatness gaussian"},
                  {"m", gauss_m},
                  {"trials", gauss_trials},
                  {"seed", fl_gauss_args.seed},
                  {"grid", fl_gauss_args.grid}};
      if (fl_gauss_args.format == "json") {
        json j{{"meta", meta_json(config, fl_gauss_args.grid, 0)},
               {"summary", json::parse(summary.str())},
               {"trials", trials}};
        write_output(fl_gauss_args.out, j.dump(2) + "\n");
      } else {
        std::ostringstream ss;
        ss << "trial,l1\n";
        for (std::size_t t = 0; t < trials.size(); ++t) {
          ss << t << ',' << fmt17(trials[t]) << '\n';
        }
        const json s = json::parse(summary.str());
        ss << "# mean=" << fmt17(s["mean"].get<double>()) << "\n";
        ss << "# stddev=" << fmt17(s["stddev"].get<double>()) << "\n";
        ss << "# target=" << fmt17(s["target"].get<double>()) << "\n";
        ss << "# deviation=" << fmt17(s["deviation"].get<double>()) << "\n";
        ss << csv_footer(config, fl_gauss_args.grid, 0);
        write_output(fl_gauss_args.out, ss.str());
      }
    }

    if (*fl_zeros) {
      auto poly = load_poly(fl_zeros_args.spec);
      json config = base_config("flatness zeros", fl_zeros_args);
      OwnedString rep;
      if (!zeros_cluster.empty()) {
        check(riesz_cluster_count_json(poly.p, zeros_cluster[0], zeros_cluster[1], zeros_delta,
                                       &rep.s),
              false);
      } else if (zeros_zero_one) {
        check(riesz_zero_one_annulus_json(poly.p, &rep.s), false);
      } else if (zeros_h > 0) {
        check(riesz_zero_annulus_json(poly.p, zeros_h, &rep.s), false);
      } else {
        die(kExitConfig, "zeros needs one of --height, --zero-one, or --cluster");
      }
      json j{{"meta", meta_json(config, 0, 0)}, {"report", json::parse(rep.str())}};
      write_output(fl_zeros_args.out, j.dump(2) + "\n");
    }

    if (*contract) {
      auto spec = load_spec(contract_cmd_args.spec);
      SpecHandle contracted;
      check(riesz_contract_product(spec.s, contract_q, &contracted.s), false);
      OwnedString out_json;
      check(riesz_spec_to_json(contracted.s, &out_json.s), false);
      json config = base_config("contract", contract_cmd_args);
      config["q"] = contract_q;
      json j{{"meta", meta_json(config, 0, 0)}, {"spec", json::parse(out_json.str())}};
      write_output(contract_cmd_args.out, j.dump(2) + "\n");
    }

    if (*validate) {
      json diagnostics_list = json::array();
      const std::string text = load_text(validate_args.spec);
      riesz_spec* spec = nullptr;
      riesz_status st = riesz_spec_from_json(text.c_str(), &spec);
      if (st != RIESZ_OK) {
        diagnostics_list.push_back({{"field", "spec"}, {"message", riesz_last_error()}});
      } else {
        std::size_t count = 0;
        riesz_spec_stage_count(spec, &count);
        auto [lo, hi] = parse_stage_range(validate_args.stages);
        (void)lo;
        if (hi > count) {
          diagnostics_list.push_back(
              {{"field", "stages"},
               {"message", "stage range exceeds the spec's " + std::to_string(count)}});
        }
        const std::size_t probe = hi > count ? count : hi;
        int64_t degree = 0;
        riesz_spec_degree(spec, probe, &degree);
        if (validate_args.grid &&
            validate_args.grid < 2 * static_cast<std::uint64_t>(degree) + 1) {
          diagnostics_list.push_back(
              {{"field", "grid"},
               {"message", "grid below floor 2*deg+1 = " + std::to_string(2 * degree + 1)}});
        }
        riesz_spec_free(spec);
      }
      // Rank-one inputs get an overflow preflight on the height recursion.
      try {
        const json parsed = json::parse(text);
        if (parsed.contains("generator") && parsed["generator"] == "rankone") {
          riesz_rankone* params = nullptr;
          if (riesz_rankone_from_json(text.c_str(), &params) == RIESZ_OK) {
            OwnedString table;
            if (riesz_return_times_json(params, &table.s) != RIESZ_OK) {
              diagnostics_list.push_back(
                  {{"field", "stages"}, {"message", riesz_last_error()}});
            } else {
              const json tj = json::parse(table.str());
              const auto& heights = tj["heights"];
              const double h_last = heights.back().get<double>();
              double ratio = 1.0;
              for (std::size_t i = 1; i < heights.size(); ++i) {
                const double a = heights[i - 1].get<double>();
                const double b = heights[i].get<double>();
                if (a > 0.0) ratio = std::max(ratio, b / a);
              }
              if (h_last > 9007199254740992.0) {  // 2^53: exact integer range
                diagnostics_list.push_back(
                    {{"field", "stages"},
                     {"message", "heights exceed 2^53; stage diagnostics stay exact in "
                                 "int64 but double-precision margins degrade"}});
              }
              const std::size_t k = heights.size() - 1;
              if (ratio >= 1.5 && k < 64 &&
                  std::log2(h_last) + double(64 - k) * std::log2(ratio) > 62.0) {
                const double overflow_stage =
                    double(k) + (62.0 - std::log2(h_last)) / std::log2(ratio);
                diagnostics_list.push_back(
                    {{"field", "stages"},
                     {"message",
                      "height recursion grows geometrically; 64-bit exponents overflow "
                      "near stage " +
                          std::to_string(static_cast<long>(overflow_stage)) +
                          " if the growth continues"}});
              }
            }
            riesz_rankone_free(params);
          }
        }
      } catch (const json::parse_error&) {
        // Already reported through spec parsing above.
      }
      json config = base_config("validate", validate_args);
      json j{{"meta", meta_json(config, validate_args.grid, 0)},
             {"diagnostics", diagnostics_list}};
      write_output(validate_args.out, j.dump(2) + "\n");
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
