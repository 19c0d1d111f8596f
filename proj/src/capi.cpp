#include "riesz/riesz.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/dichotomy.hpp"
#include "core/errors.hpp"
#include "core/factorization.hpp"
#include "core/flatness.hpp"
#include "core/products.hpp"
#include "core/rankone.hpp"
#include "core/serialize.hpp"
#include "core/trigpoly.hpp"

struct riesz_poly {
  riesz::TrigPoly value;
};
struct riesz_spec {
  riesz::RieszSpec value;
};
struct riesz_rankone {
  riesz::RankOneParams value;
};

namespace {

thread_local std::string g_last_error;

riesz_status map_code(riesz::Error::Code code) {
  switch (code) {
    case riesz::Error::Code::invalid_argument:
      return RIESZ_ERR_INVALID_ARGUMENT;
    case riesz::Error::Code::grid:
      return RIESZ_ERR_GRID;
    case riesz::Error::Code::numeric:
      return RIESZ_ERR_NUMERIC;
    case riesz::Error::Code::overflow:
      return RIESZ_ERR_OVERFLOW;
    case riesz::Error::Code::infeasible:
      return RIESZ_ERR_INFEASIBLE;
  }
  return RIESZ_ERR_INTERNAL;
}

template <typename Fn>
riesz_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RIESZ_OK;
  } catch (const riesz::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RIESZ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RIESZ_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) riesz::fail(riesz::Error::Code::invalid_argument, what);
}

std::size_t dichotomy_grid_arg(std::size_t grid) { return grid; }

}  // namespace

extern "C" {

const char* riesz_version(void) { return RIESZ_VERSION; }

const char* riesz_last_error(void) { return g_last_error.c_str(); }

void riesz_string_free(char* s) { std::free(s); }

/* ---------- polynomials ---------- */

riesz_status riesz_poly_from_terms(size_t count, const int64_t* exponents, const double* re,
                                   const double* im, riesz_poly** out) {
  return guarded([&] {
    require(out && exponents && re && im, "null argument");
    std::vector<riesz::Term> terms;
    terms.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      terms.push_back({exponents[i], riesz::Complex(re[i], im[i])});
    }
    *out = new riesz_poly{riesz::TrigPoly(std::move(terms))};
  });
}

riesz_status riesz_poly_from_json(const char* json, riesz_poly** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = new riesz_poly{riesz::poly_from_json(riesz::parse_json(json))};
  });
}

riesz_status riesz_poly_to_json(const riesz_poly* p, char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = dup_string(riesz::poly_to_json(p->value).dump());
  });
}

void riesz_poly_free(riesz_poly* p) { delete p; }

riesz_status riesz_poly_degree(const riesz_poly* p, int64_t* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = p->value.degree();
  });
}

riesz_status riesz_poly_term_count(const riesz_poly* p, size_t* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = p->value.term_count();
  });
}

riesz_status riesz_poly_terms(const riesz_poly* p, int64_t* exponents, double* re, double* im) {
  return guarded([&] {
    require(p && exponents && re && im, "null argument");
    const auto& terms = p->value.terms();
    for (size_t i = 0; i < terms.size(); ++i) {
      exponents[i] = terms[i].exponent;
      re[i] = terms[i].coeff.real();
      im[i] = terms[i].coeff.imag();
    }
  });
}

riesz_status riesz_poly_normalize(const riesz_poly* p, riesz_poly** out, double* scale,
                                  double* rotation_re, double* rotation_im) {
  return guarded([&] {
    require(p && out, "null argument");
    const riesz::Normalization n = riesz::normalize_l2_full(p->value);
    *out = new riesz_poly{n.poly};
    if (scale) *scale = n.scale;
    if (rotation_re) *rotation_re = n.rotation.real();
    if (rotation_im) *rotation_im = n.rotation.imag();
  });
}

riesz_status riesz_poly_multiply(const riesz_poly* a, const riesz_poly* b, riesz_poly** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = new riesz_poly{riesz::multiply(a->value, b->value)};
  });
}

riesz_status riesz_poly_contract(const riesz_poly* p, int64_t q, riesz_poly** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = new riesz_poly{riesz::contract(p->value, q)};
  });
}

riesz_status riesz_poly_l2_norm(const riesz_poly* p, double* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = riesz::l2_norm(p->value);
  });
}

riesz_status riesz_poly_l1_norm(const riesz_poly* p, size_t grid, double* out) {
  return guarded([&] {
    require(p && out, "null argument");
    const size_t n = grid ? grid : riesz::default_grid_size(p->value.degree());
    *out = riesz::l1_norm(p->value, n);
  });
}

riesz_status riesz_poly_sup_norm(const riesz_poly* p, size_t grid, double* out) {
  return guarded([&] {
    require(p && out, "null argument");
    const size_t n = grid ? grid : riesz::default_grid_size(p->value.degree());
    *out = riesz::sup_norm(p->value, n);
  });
}

riesz_status riesz_default_grid(int64_t degree, size_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = riesz::default_grid_size(degree);
  });
}

riesz_status riesz_poly_eval_grid(const riesz_poly* p, size_t grid, double* values_re,
                                  double* values_im) {
  return guarded([&] {
    require(p && values_re && values_im, "null argument");
    const auto values = riesz::evaluate_grid(p->value, grid);
    for (size_t k = 0; k < values.size(); ++k) {
      values_re[k] = values[k].real();
      values_im[k] = values[k].imag();
    }
  });
}

riesz_status riesz_polys_dissociated(const riesz_poly* const* ps, size_t count,
                                     int* dissociated, char** witness_json) {
  return guarded([&] {
    require(ps && dissociated, "null argument");
    std::vector<riesz::TrigPoly> polys;
    polys.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      require(ps[i] != nullptr, "null polynomial");
      polys.push_back(ps[i]->value);
    }
    const auto res = riesz::is_dissociated(polys);
    *dissociated = res.dissociated ? 1 : 0;
    if (witness_json) {
      if (res.witness) {
        riesz::Json j{{"first", res.witness->first.exponents},
                      {"second", res.witness->second.exponents}};
        *witness_json = dup_string(j.dump());
      } else {
        *witness_json = nullptr;
      }
    }
  });
}

/* ---------- factorization ---------- */

riesz_status riesz_factorization_json(const riesz_poly* p, char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = dup_string(riesz::factorization_to_json(riesz::inner_outer(p->value)).dump());
  });
}

riesz_status riesz_mahler_measure(const riesz_poly* p, double* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = riesz::mahler_measure(p->value);
  });
}

riesz_status riesz_mahler_jensen(const riesz_poly* p, size_t grid, double* out) {
  return guarded([&] {
    require(p && out, "null argument");
    const size_t n = grid ? grid : riesz::default_grid_size(p->value.degree());
    *out = riesz::mahler_measure_jensen(p->value, n);
  });
}

riesz_status riesz_outer_constant_term(const riesz_poly* p, double* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = riesz::outer_constant_term(p->value);
  });
}

/* ---------- product specifications ---------- */

riesz_status riesz_spec_from_json(const char* json, riesz_spec** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = new riesz_spec{riesz::spec_from_json(riesz::parse_json(json))};
  });
}

riesz_status riesz_spec_to_json(const riesz_spec* spec, char** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = dup_string(riesz::spec_to_json(spec->value).dump());
  });
}

void riesz_spec_free(riesz_spec* spec) { delete spec; }

riesz_status riesz_spec_stage_count(const riesz_spec* spec, size_t* out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = spec->value.stage_count();
  });
}

riesz_status riesz_spec_factor(const riesz_spec* spec, size_t index, riesz_poly** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    require(index >= 1 && index <= spec->value.stage_count(), "factor index out of range");
    *out = new riesz_poly{spec->value.factors[index - 1]};
  });
}

riesz_status riesz_spec_degree(const riesz_spec* spec, size_t n, int64_t* out) {
  return guarded([&] {
    require(spec && out, "null argument");
    require(n >= 1 && n <= spec->value.stage_count(), "stage out of range");
    int64_t deg = 0;
    for (size_t j = 0; j < n; ++j) {
      deg = riesz::checked_add(deg, spec->value.factors[j].degree(), "stage degree");
    }
    *out = deg;
  });
}

riesz_status riesz_partial_product(const riesz_spec* spec, size_t n, riesz_poly** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = new riesz_poly{riesz::partial_product(spec->value, n)};
  });
}

riesz_status riesz_density_grid(const riesz_spec* spec, size_t n, size_t grid, double* density) {
  return guarded([&] {
    require(spec && density, "null argument");
    const auto values = riesz::density_grid(spec->value, n, grid);
    std::memcpy(density, values.data(), values.size() * sizeof(double));
  });
}

riesz_status riesz_fourier_coefficients(const riesz_spec* spec, size_t n, int64_t kmax,
                                        double* re, double* im) {
  return guarded([&] {
    require(spec && re && im, "null argument");
    const auto values = riesz::fourier_coefficients(spec->value, n, kmax);
    for (size_t i = 0; i < values.size(); ++i) {
      re[i] = values[i].real();
      im[i] = values[i].imag();
    }
  });
}

riesz_status riesz_stage_diagnostics_json(const riesz_spec* spec, size_t n, char** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = dup_string(
        riesz::stage_diagnostics_to_json(riesz::stage_diagnostics(spec->value, n)).dump());
  });
}

riesz_status riesz_mahler_of_product(const riesz_spec* spec, size_t n, double* out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = riesz::mahler_of_product(spec->value, n);
  });
}

riesz_status riesz_mahler_of_product_jensen(const riesz_spec* spec, size_t n, size_t grid,
                                            double* out) {
  return guarded([&] {
    require(spec && out, "null argument");
    size_t g = grid;
    if (g == 0) {
      int64_t deg = 0;
      riesz_spec_degree(spec, n, &deg);
      g = riesz::default_grid_size(deg);
    }
    *out = riesz::mahler_of_product_jensen(spec->value, n, g);
  });
}

riesz_status riesz_subproduct(const riesz_spec* spec, const size_t* indices, size_t count,
                              riesz_spec** out) {
  return guarded([&] {
    require(spec && indices && out, "null argument");
    *out = new riesz_spec{
        riesz::subproduct(spec->value, std::vector<size_t>(indices, indices + count))};
  });
}

riesz_status riesz_corollary25_json(const riesz_spec* spec, char** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = dup_string(
        riesz::corollary25_to_json(riesz::select_corollary25_indices(spec->value)).dump());
  });
}

riesz_status riesz_contract_product(const riesz_spec* spec, int64_t q, riesz_spec** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = new riesz_spec{riesz::contract_product(spec->value, q)};
  });
}

riesz_status riesz_classical_riesz(const double* thetas, const int64_t* exponents, size_t count,
                                   int tail_assertion, riesz_spec** out, char** verdict_json) {
  return guarded([&] {
    require(thetas && exponents && out, "null argument");
    require(tail_assertion >= 0 && tail_assertion <= 2, "tail assertion must be 0, 1 or 2");
    const auto tail = static_cast<riesz::TailAssertion>(
        tail_assertion == 0 ? static_cast<int>(riesz::TailAssertion::unknown)
        : tail_assertion == 1 ? static_cast<int>(riesz::TailAssertion::convergent)
                              : static_cast<int>(riesz::TailAssertion::divergent));
    auto res = riesz::classical_riesz(std::vector<double>(thetas, thetas + count),
                                      std::vector<int64_t>(exponents, exponents + count), tail);
    if (verdict_json) {
      riesz::Json j{{"verdict", res.verdict},
                    {"criterion_partial", res.criterion_partial},
                    {"l2_partial", res.l2_partial},
                    {"lacunary_ok", res.lacunary_ok},
                    {"truncated", res.truncated}};
      *verdict_json = dup_string(j.dump());
    }
    *out = new riesz_spec{std::move(res.spec)};
  });
}

riesz_status riesz_ledrappier(const int64_t* heights, const int64_t* spacers, size_t count,
                              riesz_spec** out) {
  return guarded([&] {
    require(heights && spacers && out, "null argument");
    *out = new riesz_spec{
        riesz::ledrappier_spec(std::vector<int64_t>(heights, heights + count),
                               std::vector<int64_t>(spacers, spacers + count))};
  });
}

riesz_status riesz_tail_autocorrelation(const riesz_spec* spec, size_t m, int64_t kmax,
                                        double* max_abs, double* bound) {
  return guarded([&] {
    require(spec && max_abs && bound, "null argument");
    const auto t = riesz::tail_autocorrelation(spec->value, m, kmax);
    *max_abs = t.max_abs;
    *bound = t.bound;
  });
}

/* ---------- dichotomy ---------- */

riesz_status riesz_affinity_sequence(const riesz_spec* mu, const riesz_spec* nu, size_t nmax,
                                     size_t grid, double* values, size_t* grid_used,
                                     double* discrepancy) {
  return guarded([&] {
    require(mu && nu && values, "null argument");
    const auto seq =
        riesz::affinity_sequence(mu->value, nu->value, nmax, dichotomy_grid_arg(grid));
    std::memcpy(values, seq.values.data(), seq.values.size() * sizeof(double));
    if (grid_used) *grid_used = seq.grid;
    if (discrepancy) *discrepancy = seq.discrepancy;
  });
}

riesz_status riesz_bourgain_sequence(const riesz_spec* mu, size_t nmax, size_t grid,
                                     double* values, size_t* grid_used, double* discrepancy) {
  return guarded([&] {
    require(mu && values, "null argument");
    const auto seq = riesz::bourgain_l1_sequence(mu->value, nmax, dichotomy_grid_arg(grid));
    std::memcpy(values, seq.values.data(), seq.values.size() * sizeof(double));
    if (grid_used) *grid_used = seq.grid;
    if (discrepancy) *discrepancy = seq.discrepancy;
  });
}

riesz_status riesz_guenais_json(const riesz_spec* mu, size_t nmax, size_t grid, char** out) {
  return guarded([&] {
    require(mu && out, "null argument");
    *out = dup_string(riesz::guenais_to_json(riesz::guenais_test(mu->value, nmax, grid)).dump());
  });
}

riesz_status riesz_rn_sqrt_grid(const riesz_spec* mu, size_t n, size_t grid, double* values) {
  return guarded([&] {
    require(mu && values, "null argument");
    const auto v = riesz::rn_sqrt_grid(mu->value, n, grid);
    std::memcpy(values, v.data(), v.size() * sizeof(double));
  });
}

riesz_status riesz_phase_grid(const riesz_spec* mu, size_t n, size_t grid, double floor,
                              double* re, double* im, uint8_t* defined,
                              size_t* undefined_count) {
  return guarded([&] {
    require(mu && re && im && defined, "null argument");
    const auto phase =
        riesz::phase_grid(mu->value, n, grid, floor > 0.0 ? floor : riesz::kPhaseFloor);
    for (size_t k = 0; k < phase.values.size(); ++k) {
      re[k] = phase.values[k].real();
      im[k] = phase.values[k].imag();
      defined[k] = phase.defined[k] ? 1 : 0;
    }
    if (undefined_count) *undefined_count = phase.undefined_count;
  });
}

riesz_status riesz_phase_fourier_coefficient(const riesz_spec* mu, size_t n, size_t grid,
                                             double floor, int64_t k, double* re, double* im) {
  return guarded([&] {
    require(mu && re && im, "null argument");
    const auto phase =
        riesz::phase_grid(mu->value, n, grid, floor > 0.0 ? floor : riesz::kPhaseFloor);
    const riesz::Complex c = riesz::phase_fourier_coefficient(phase, k);
    *re = c.real();
    *im = c.imag();
  });
}

riesz_status riesz_support_bound_json(const riesz_spec* mu, size_t budget, uint64_t seed,
                                      char** out) {
  return guarded([&] {
    require(mu && out, "null argument");
    *out = dup_string(
        riesz::support_bound_to_json(riesz::support_upper_bound(mu->value, budget, seed)).dump());
  });
}

riesz_status riesz_theorem615_json(const riesz_spec* mu, const double* g, size_t grid,
                                   size_t nmax, char** out) {
  return guarded([&] {
    require(mu && g && out, "null argument");
    const auto rows = riesz::theorem615_statistics(
        mu->value, std::vector<double>(g, g + grid), nmax, grid);
    riesz::Json j = riesz::Json::array();
    for (const auto& r : rows) j.push_back({{"factor_l1", r.factor_l1}, {"weighted", r.weighted}});
    *out = dup_string(j.dump());
  });
}

riesz_status riesz_dichotomy_report_json(const riesz_spec* mu, const riesz_spec* nu,
                                         size_t nmax, size_t grid, size_t budget,
                                         uint64_t seed, char** out) {
  return guarded([&] {
    require(mu && out, "null argument");
    std::optional<riesz::RieszSpec> nu_value;
    if (nu) nu_value = nu->value;
    *out = dup_string(riesz::dichotomy_report_to_json(riesz::build_dichotomy_report(
                                                          mu->value, nu_value, nmax, grid,
                                                          budget, seed))
                          .dump());
  });
}

/* ---------- rank-one constructions ---------- */

riesz_status riesz_rankone_from_json(const char* json, riesz_rankone** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = new riesz_rankone{riesz::rankone_params_from_json(riesz::parse_json(json))};
  });
}

riesz_status riesz_rankone_to_json(const riesz_rankone* params, char** out) {
  return guarded([&] {
    require(params && out, "null argument");
    *out = dup_string(riesz::rankone_params_to_json(params->value).dump());
  });
}

void riesz_rankone_free(riesz_rankone* params) { delete params; }

riesz_status riesz_rankone_stage_count(const riesz_rankone* params, size_t* out) {
  return guarded([&] {
    require(params && out, "null argument");
    *out = params->value.stages.size();
  });
}

riesz_status riesz_return_times_json(const riesz_rankone* params, char** out) {
  return guarded([&] {
    require(params && out, "null argument");
    *out = dup_string(
        riesz::return_time_table_to_json(riesz::return_times(params->value)).dump());
  });
}

riesz_status riesz_rankone_build(const riesz_rankone* params, size_t k, riesz_spec** out) {
  return guarded([&] {
    require(params && out, "null argument");
    *out = new riesz_spec{riesz::build_polynomials(params->value, k)};
  });
}

riesz_status riesz_dissipativity_product(const riesz_rankone* params, size_t k, double* out) {
  return guarded([&] {
    require(params && out, "null argument");
    *out = riesz::dissipativity_product(params->value, k);
  });
}

riesz_status riesz_dynamical_origin(const riesz_spec* spec, int* dynamical, int* purely,
                                    char** violation) {
  return guarded([&] {
    require(spec && dynamical && purely, "null argument");
    const auto check = riesz::is_dynamical_origin(spec->value);
    *dynamical = check.dynamical ? 1 : 0;
    *purely = check.purely ? 1 : 0;
    if (violation) {
      *violation = check.violation.empty() ? nullptr : dup_string(check.violation);
    }
  });
}

riesz_status riesz_reconstruct_params_json(const riesz_spec* spec, char** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    const auto rec = riesz::reconstruct_params(spec->value);
    riesz::Json j{{"m", rec.m}, {"spacers", rec.spacers}, {"p", rec.probs}};
    *out = dup_string(j.dump());
  });
}

riesz_status riesz_dissociate_lift(const riesz_poly* const* ps, size_t count,
                                   int64_t multiplier, riesz_spec** out,
                                   int64_t* lift_exponents) {
  return guarded([&] {
    require(ps && out, "null argument");
    std::vector<riesz::TrigPoly> polys;
    polys.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      require(ps[i] != nullptr, "null polynomial");
      polys.push_back(ps[i]->value);
    }
    auto lift = riesz::dissociate_lift(polys, multiplier);
    if (lift_exponents) {
      std::memcpy(lift_exponents, lift.lift_exponents.data(),
                  lift.lift_exponents.size() * sizeof(int64_t));
    }
    *out = new riesz_spec{std::move(lift.spec)};
  });
}

riesz_status riesz_flat_lift(const riesz_poly* const* ps, size_t count, size_t stage_count,
                             int64_t multiplier, riesz_spec** out, size_t* selected,
                             double* fractions, int64_t* lift_exponents) {
  return guarded([&] {
    require(ps && out, "null argument");
    std::vector<riesz::TrigPoly> polys;
    polys.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      require(ps[i] != nullptr, "null polynomial");
      polys.push_back(ps[i]->value);
    }
    auto res = riesz::flat_lift_schedule(polys, stage_count, multiplier);
    if (selected) {
      std::memcpy(selected, res.selected.data(), res.selected.size() * sizeof(size_t));
    }
    if (fractions) {
      std::memcpy(fractions, res.fractions.data(), res.fractions.size() * sizeof(double));
    }
    if (lift_exponents) {
      std::memcpy(lift_exponents, res.lift.lift_exponents.data(),
                  res.lift.lift_exponents.size() * sizeof(int64_t));
    }
    *out = new riesz_spec{std::move(res.lift.spec)};
  });
}

/* ---------- flatness and zeros ---------- */

riesz_status riesz_flatness_metrics_json(const riesz_poly* p, size_t grid, double lambda,
                                         char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    std::optional<double> lam;
    if (lambda >= 0.0) lam = lambda;
    *out = dup_string(
        riesz::flatness_metrics_to_json(riesz::flatness_metrics(p->value, grid, lam)).dump());
  });
}

riesz_status riesz_barker_catalog_json(char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    riesz::Json j = riesz::Json::array();
    for (const auto& e : riesz::barker_catalog()) {
      j.push_back({{"length", e.length}, {"signs", e.signs}});
    }
    *out = dup_string(j.dump());
  });
}

riesz_status riesz_verify_barker(const int* signs, size_t count, double* max_correlation,
                                 int* is_barker) {
  return guarded([&] {
    require(signs && max_correlation && is_barker, "null argument");
    const auto check = riesz::verify_barker(std::vector<int>(signs, signs + count));
    *max_correlation = check.max_correlation;
    *is_barker = check.is_barker ? 1 : 0;
  });
}

riesz_status riesz_gaussian_experiment(int64_t m, size_t trials, uint64_t seed, size_t grid,
                                       unsigned threads, double* trial_l1,
                                       char** summary_json) {
  return guarded([&] {
    require(trial_l1 != nullptr, "null argument");
    const auto res = riesz::gaussian_l1_experiment(m, trials, seed, grid,
                                                   threads == 0 ? 1 : threads);
    std::memcpy(trial_l1, res.trial_l1.data(), res.trial_l1.size() * sizeof(double));
    if (summary_json) {
      *summary_json =
          dup_string(riesz::gaussian_experiment_to_json(res, m, trials, seed).dump());
    }
  });
}

riesz_status riesz_bisect_bm(int64_t m, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = riesz::bisect_bm(m);
  });
}

riesz_status riesz_zero_annulus_json(const riesz_poly* p, int64_t h, char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = dup_string(
        riesz::annulus_check_to_json(riesz::zero_annulus_check(p->value, h)).dump());
  });
}

riesz_status riesz_zero_one_annulus_json(const riesz_poly* p, char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = dup_string(
        riesz::zero_one_check_to_json(riesz::zero_one_annulus_check(p->value)).dump());
  });
}

riesz_status riesz_cluster_count_json(const riesz_poly* p, double point_re, double point_im,
                                      double delta, char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    std::optional<double> d;
    if (delta > 0.0) d = delta;
    *out = dup_string(riesz::cluster_count_to_json(riesz::cluster_count_check(
                                                       p->value,
                                                       riesz::Complex(point_re, point_im), d))
                          .dump());
  });
}

}  // extern "C"
