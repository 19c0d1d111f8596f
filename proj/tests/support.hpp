#pragma once

// Test-only oracles and generators, kept independent of the library code
// paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <vector>

#include "core/rng.hpp"
#include "core/trigpoly.hpp"

namespace riesz::testing {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Plain per-point evaluation, no FFT: the oracle for evaluate_grid.
inline Complex horner_at_angle(const TrigPoly& p, double theta) {
  Complex acc(0.0);
  for (const Term& t : p.terms()) {
    acc += t.coeff * std::polar(1.0, theta * static_cast<double>(t.exponent));
  }
  return acc;
}

// Direct term-by-term sum at grid point k of N with exact integer angle
// reduction (k*e mod N), so the oracle itself carries no phase error.
inline Complex direct_at_grid_point(const TrigPoly& p, std::size_t k, std::size_t n) {
  Complex acc(0.0);
  const auto nn = static_cast<std::int64_t>(n);
  for (const Term& t : p.terms()) {
    const std::int64_t m = (static_cast<std::int64_t>(k) * (t.exponent % nn)) % nn;
    acc += t.coeff * std::polar(1.0, kTwoPi * static_cast<double>(m) / static_cast<double>(n));
  }
  return acc;
}

// Brute-force dissociation over all selections; only for tiny inputs.
inline bool brute_force_dissociated(const std::vector<TrigPoly>& ps) {
  std::vector<std::vector<std::int64_t>> sets;
  for (const auto& p : ps) {
    std::vector<std::int64_t> s;
    for (const auto& t : p.terms()) s.push_back(t.exponent);
    sets.push_back(s);
  }
  std::vector<std::int64_t> sums = {0};
  for (const auto& s : sets) {
    std::vector<std::int64_t> next;
    for (auto e : s)
      for (auto v : sums) next.push_back(v + e);
    sums.swap(next);
  }
  std::set<std::int64_t> uniq(sums.begin(), sums.end());
  return uniq.size() == sums.size();
}

// Composite midpoint quadrature of f over [0, 2*pi), test-side.
template <typename F>
double midpoint_mean(F&& f, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += f(kTwoPi * (static_cast<double>(k) + 0.5) / static_cast<double>(n));
  }
  return acc / static_cast<double>(n);
}

inline TrigPoly random_poly(Rng& rng, std::int64_t max_degree, std::size_t max_terms,
                            bool ensure_constant = true) {
  const std::size_t want = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_terms)));
  std::set<std::int64_t> exps;
  if (ensure_constant) exps.insert(0);
  while (exps.size() < want) exps.insert(rng.uniform_int(0, max_degree));
  std::vector<Term> terms;
  for (auto e : exps) {
    terms.push_back({e, Complex(rng.next_normal(), rng.next_normal())});
  }
  // Keep the constant term well away from zero so factorization preconditions hold.
  if (ensure_constant && std::abs(terms.front().coeff) < 0.2) {
    terms.front().coeff += Complex(0.5, 0.0);
  }
  return TrigPoly(std::move(terms));
}

inline TrigPoly random_normalized_poly(Rng& rng, std::int64_t max_degree, std::size_t max_terms) {
  return normalize_l2(random_poly(rng, max_degree, max_terms));
}

}  // namespace riesz::testing
