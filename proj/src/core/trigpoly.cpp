#include "core/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "core/errors.hpp"
#include "core/fft.hpp"

namespace riesz {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::size_t kMaxGrid = std::size_t{1} << 24;
constexpr std::int64_t kMaxDenseDegree = std::int64_t{1} << 22;
}  // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b, const std::string& what) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) fail(Error::Code::overflow, "exponent overflow in " + what);
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, const std::string& what) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) fail(Error::Code::overflow, "exponent overflow in " + what);
  return out;
}

TrigPoly::TrigPoly(std::vector<Term> terms) {
  for (const Term& t : terms) {
    if (t.exponent < 0) fail(Error::Code::invalid_argument, "negative exponent in analytic polynomial");
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  terms_.reserve(terms.size());
  for (const Term& t : terms) {
    if (!terms_.empty() && terms_.back().exponent == t.exponent) {
      terms_.back().coeff += t.coeff;
      if (std::abs(terms_.back().coeff) < kZeroThreshold) terms_.pop_back();
    } else if (std::abs(t.coeff) >= kZeroThreshold) {
      terms_.push_back(t);
    }
  }
}

TrigPoly TrigPoly::from_dense(const std::vector<Complex>& coeffs) {
  std::vector<Term> terms;
  terms.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    terms.push_back({static_cast<std::int64_t>(i), coeffs[i]});
  }
  return TrigPoly(std::move(terms));
}

Complex TrigPoly::constant_term() const {
  if (!terms_.empty() && terms_.front().exponent == 0) return terms_.front().coeff;
  return Complex(0.0);
}

std::vector<Complex> TrigPoly::dense_coeffs() const {
  if (degree() > kMaxDenseDegree) fail(Error::Code::grid, "dense representation refused above degree 2^22");
  std::vector<Complex> out(static_cast<std::size_t>(degree()) + 1, Complex(0.0));
  for (const Term& t : terms_) out[static_cast<std::size_t>(t.exponent)] = t.coeff;
  return out;
}

Complex TrigPoly::eval(Complex z) const {
  // Sparse Horner: factor out z^gap between consecutive stored terms.
  Complex acc(0.0);
  std::int64_t prev = -1;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (prev < 0) {
      acc = it->coeff;
    } else {
      std::int64_t gap = prev - it->exponent;
      Complex zp(1.0);
      Complex base = z;
      while (gap > 0) {
        if (gap & 1) zp *= base;
        base *= base;
        gap >>= 1;
      }
      acc = acc * zp + it->coeff;
    }
    prev = it->exponent;
  }
  if (prev > 0) {
    std::int64_t gap = prev;
    Complex zp(1.0);
    Complex base = z;
    while (gap > 0) {
      if (gap & 1) zp *= base;
      base *= base;
      gap >>= 1;
    }
    acc *= zp;
  }
  return acc;
}

Complex TrigPoly::eval_unit(double theta) const {
  Complex acc(0.0);
  for (const Term& t : terms_) {
    const double ang = std::fmod(theta * static_cast<double>(t.exponent), kTwoPi);
    acc += t.coeff * std::polar(1.0, ang);
  }
  return acc;
}

bool TrigPoly::equals(const TrigPoly& other, double tol) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exponent != other.terms_[i].exponent) return false;
    if (std::abs(terms_[i].coeff - other.terms_[i].coeff) > tol) return false;
  }
  return true;
}

Normalization normalize_l2_full(const TrigPoly& p) {
  if (p.is_zero()) fail(Error::Code::invalid_argument, "empty polynomial");
  double sumsq = 0.0;
  for (const Term& t : p.terms()) sumsq += std::norm(t.coeff);
  const double scale = 1.0 / std::sqrt(sumsq);

  Complex rotation(1.0);
  const Complex c0 = p.constant_term();
  if (std::abs(c0) > 0.0) rotation = std::conj(c0) / std::abs(c0);

  std::vector<Term> terms = p.terms();
  for (Term& t : terms) t.coeff *= rotation * scale;
  if (std::abs(c0) > 0.0) terms.front().coeff = Complex(std::abs(c0) * scale, 0.0);

  Normalization out;
  out.poly = TrigPoly(std::move(terms));
  out.scale = scale;
  out.rotation = rotation;
  return out;
}

TrigPoly normalize_l2(const TrigPoly& p) { return normalize_l2_full(p).poly; }

TrigPoly multiply(const TrigPoly& p, const TrigPoly& q) {
  if (p.is_zero() || q.is_zero()) return TrigPoly();
  std::map<std::int64_t, Complex> acc;
  for (const Term& a : p.terms()) {
    for (const Term& b : q.terms()) {
      acc[checked_add(a.exponent, b.exponent, "multiply")] += a.coeff * b.coeff;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (const auto& [e, c] : acc) terms.push_back({e, c});
  return TrigPoly(std::move(terms));
}

double l2_norm(const TrigPoly& p) {
  double sumsq = 0.0;
  for (const Term& t : p.terms()) sumsq += std::norm(t.coeff);
  return std::sqrt(sumsq);
}

std::size_t default_grid_size(std::int64_t degree) {
  if (degree < 0) fail(Error::Code::invalid_argument, "negative degree");
  const std::uint64_t floor64 =
      std::max<std::uint64_t>(4 * static_cast<std::uint64_t>(degree) + 4, 4096);
  if (floor64 > kMaxGrid) fail(Error::Code::grid, "grid too large");
  std::size_t n = 4096;
  while (n < floor64) n <<= 1;
  return n;
}

std::vector<Complex> evaluate_grid(const TrigPoly& p, std::size_t n) {
  if (n == 0) fail(Error::Code::invalid_argument, "grid size must be positive");
  if (n > kMaxGrid) fail(Error::Code::grid, "grid too large");

  if (is_power_of_two(n)) {
    // Alias exponents mod N; exact for evaluation at N-th roots of unity.
    std::vector<Complex> data(n, Complex(0.0));
    for (const Term& t : p.terms()) {
      data[static_cast<std::size_t>(t.exponent % static_cast<std::int64_t>(n))] += t.coeff;
    }
    fft(data, +1);
    return data;
  }

  std::vector<Complex> values(n, Complex(0.0));
  const auto nn = static_cast<std::int64_t>(n);
  for (const Term& t : p.terms()) {
    const std::int64_t em = t.exponent % nn;
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t m = (static_cast<std::int64_t>(k) * em) % nn;
      values[k] += t.coeff * std::polar(1.0, kTwoPi * static_cast<double>(m) / static_cast<double>(n));
    }
  }
  return values;
}

namespace {
void check_grid_floor(const TrigPoly& p, std::size_t n) {
  const std::uint64_t floor64 = 2 * static_cast<std::uint64_t>(p.degree()) + 1;
  if (n < floor64) fail(Error::Code::grid, "grid too coarse");
}
}  // namespace

double l1_norm(const TrigPoly& p, std::size_t n) {
  check_grid_floor(p, n);
  const auto values = evaluate_grid(p, n);
  double sum = 0.0;
  for (const Complex& v : values) sum += std::abs(v);
  return sum / static_cast<double>(n);
}

double sup_norm(const TrigPoly& p, std::size_t n) {
  check_grid_floor(p, n);
  const auto values = evaluate_grid(p, n);
  double best = 0.0;
  for (const Complex& v : values) best = std::max(best, std::abs(v));
  return best;
}

TrigPoly contract(const TrigPoly& p, std::int64_t q) {
  if (q < 1) fail(Error::Code::invalid_argument, "contraction order must be >= 1");
  std::vector<Term> terms = p.terms();
  for (Term& t : terms) t.exponent = checked_mul(t.exponent, q, "contract");
  return TrigPoly(std::move(terms));
}

namespace {

Selection decode_selection(const std::vector<std::vector<std::int64_t>>& sets, std::uint64_t code) {
  Selection sel;
  sel.exponents.resize(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::uint64_t sz = sets[i].size();
    sel.exponents[i] = sets[i][static_cast<std::size_t>(code % sz)];
    code /= sz;
  }
  return sel;
}

// Sufficient certificate: consecutive exponent gaps in each later set exceed
// the span of achievable partial sums so far.
bool gap_certificate_ordered(const std::vector<std::vector<std::int64_t>>& sets) {
  std::int64_t lo = sets[0].front(), hi = sets[0].back();
  for (std::size_t j = 1; j < sets.size(); ++j) {
    const auto& s = sets[j];
    const std::int64_t span = hi - lo;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i] - s[i - 1] <= span) return false;
    }
    lo = checked_add(lo, s.front(), "dissociation");
    hi = checked_add(hi, s.back(), "dissociation");
  }
  return true;
}

std::int64_t min_gap(const std::vector<std::int64_t>& s) {
  std::int64_t g = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 1; i < s.size(); ++i) g = std::min(g, s[i] - s[i - 1]);
  return g;
}

// Dissociation does not depend on the list order, so try the certificate in
// ascending min-gap order (towers certify naturally that way).
bool gap_certificate(std::vector<std::vector<std::int64_t>> sets) {
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    return min_gap(a) < min_gap(b);
  });
  return gap_certificate_ordered(sets);
}

}  // namespace

DissociationResult dissociated_sets(const std::vector<std::vector<std::int64_t>>& sets,
                                    std::uint64_t cap) {
  if (sets.empty()) fail(Error::Code::invalid_argument, "empty polynomial list");
  for (const auto& s : sets) {
    if (s.empty()) fail(Error::Code::invalid_argument, "zero polynomial in dissociation check");
  }

  DissociationResult res;

  // Pairwise pre-pass: a collision between two polynomials extends to a
  // collision of the whole family (fix any choice elsewhere), and this
  // catches duplicated factors that the incremental merge would never reach.
  std::uint64_t prepass_budget = std::uint64_t{1} << 22;
  for (std::size_t i = 0; i < sets.size() && prepass_budget > 0; ++i) {
    for (std::size_t j = i + 1; j < sets.size() && prepass_budget > 0; ++j) {
      const std::uint64_t work = sets[i].size() * sets[j].size();
      if (work > 65536) continue;
      prepass_budget -= std::min(prepass_budget, work);
      std::vector<std::pair<std::int64_t, std::pair<std::size_t, std::size_t>>> sums;
      sums.reserve(sets[i].size() * sets[j].size());
      for (std::size_t a = 0; a < sets[i].size(); ++a) {
        for (std::size_t b = 0; b < sets[j].size(); ++b) {
          sums.push_back({checked_add(sets[i][a], sets[j][b], "dissociation"), {a, b}});
        }
      }
      std::sort(sums.begin(), sums.end());
      for (std::size_t k = 1; k < sums.size(); ++k) {
        if (sums[k].first != sums[k - 1].first) continue;
        Selection first, second;
        first.exponents.resize(sets.size());
        second.exponents.resize(sets.size());
        for (std::size_t l = 0; l < sets.size(); ++l) {
          first.exponents[l] = sets[l].front();
          second.exponents[l] = sets[l].front();
        }
        first.exponents[i] = sets[i][sums[k - 1].second.first];
        first.exponents[j] = sets[j][sums[k - 1].second.second];
        second.exponents[i] = sets[i][sums[k].second.first];
        second.exponents[j] = sets[j][sums[k].second.second];
        res.dissociated = false;
        res.witness = {first, second};
        return res;
      }
    }
  }

  if (gap_certificate(sets)) {
    res.dissociated = true;
    return res;
  }

  std::uint64_t combos = 1;
  bool over_cap = false;
  for (const auto& s : sets) {
    if (combos > cap / s.size()) {
      over_cap = true;
      break;
    }
    combos *= s.size();
  }

  if (!over_cap) {
    // Exact enumeration: (sum, mixed-radix selection code) pairs.
    std::vector<std::pair<std::int64_t, std::uint64_t>> sums;
    sums.reserve(static_cast<std::size_t>(combos));
    sums.push_back({0, 0});
    std::uint64_t radix = 1;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      std::vector<std::pair<std::int64_t, std::uint64_t>> next;
      next.reserve(sums.size() * sets[j].size());
      for (std::size_t i = 0; i < sets[j].size(); ++i) {
        for (const auto& [sum, code] : sums) {
          next.push_back({checked_add(sum, sets[j][i], "dissociation"), code + radix * i});
        }
      }
      radix *= sets[j].size();
      sums.swap(next);
    }
    std::sort(sums.begin(), sums.end());
    for (std::size_t i = 1; i < sums.size(); ++i) {
      if (sums[i].first == sums[i - 1].first) {
        res.dissociated = false;
        res.witness = {decode_selection(sets, sums[i - 1].second), decode_selection(sets, sums[i].second)};
        return res;
      }
    }
    res.dissociated = true;
    return res;
  }

  // Incremental sorted-sumset merge with provenance; abort when the running
  // sumset would exceed the cap, unless the remaining sets admit a gap
  // certificate against the current span.
  std::vector<std::pair<std::int64_t, std::uint64_t>> sums = {{0, 0}};
  std::uint64_t radix = 1;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (sums.size() * sets[j].size() > cap) {
      // Span proxy is a two-element set {lo, hi}: the verified-distinct
      // prefix enters the certificate only through its span, and the
      // remaining sets may be certified in any order.
      std::vector<std::vector<std::int64_t>> rest;
      rest.push_back({sums.front().first, sums.back().first});
      std::vector<std::vector<std::int64_t>> remaining(sets.begin() + static_cast<std::ptrdiff_t>(j),
                                                       sets.end());
      std::sort(remaining.begin(), remaining.end(), [](const auto& a, const auto& b) {
        return min_gap(a) < min_gap(b);
      });
      for (auto& s : remaining) rest.push_back(std::move(s));
      if (sums.front().first != sums.back().first && gap_certificate_ordered(rest)) {
        res.dissociated = true;
        return res;
      }
      fail(Error::Code::infeasible, "dissociation check infeasible");
    }
    if (radix > 0 && sets[j].size() > 0 &&
        radix > std::numeric_limits<std::uint64_t>::max() / sets[j].size()) {
      fail(Error::Code::infeasible, "dissociation check infeasible");
    }
    std::vector<std::pair<std::int64_t, std::uint64_t>> next;
    next.reserve(sums.size() * sets[j].size());
    for (std::size_t i = 0; i < sets[j].size(); ++i) {
      for (const auto& [sum, code] : sums) {
        next.push_back({checked_add(sum, sets[j][i], "dissociation"), code + radix * i});
      }
    }
    std::sort(next.begin(), next.end());
    for (std::size_t i = 1; i < next.size(); ++i) {
      if (next[i].first == next[i - 1].first) {
        // Pad codes so decode sees the full list: unchosen sets take index 0.
        res.dissociated = false;
        res.witness = {decode_selection(sets, next[i - 1].second), decode_selection(sets, next[i].second)};
        return res;
      }
    }
    radix *= sets[j].size();
    sums.swap(next);
  }
  res.dissociated = true;
  return res;
}

namespace {
std::vector<std::vector<std::int64_t>> exponent_sets(const std::vector<TrigPoly>& ps) {
  std::vector<std::vector<std::int64_t>> sets;
  sets.reserve(ps.size());
  for (const TrigPoly& p : ps) {
    std::vector<std::int64_t> s;
    s.reserve(p.term_count());
    for (const Term& t : p.terms()) s.push_back(t.exponent);
    sets.push_back(std::move(s));
  }
  return sets;
}
}  // namespace

DissociationResult is_dissociated(const std::vector<TrigPoly>& ps, std::uint64_t cap) {
  return dissociated_sets(exponent_sets(ps), cap);
}

DissociationResult is_dissociated_modsq(const std::vector<TrigPoly>& ps, std::uint64_t cap) {
  std::vector<std::vector<std::int64_t>> sets;
  sets.reserve(ps.size());
  for (const TrigPoly& p : ps) {
    if (p.is_zero()) fail(Error::Code::invalid_argument, "zero polynomial in dissociation check");
    std::vector<std::int64_t> diffs;
    for (const Term& a : p.terms()) {
      for (const Term& b : p.terms()) {
        diffs.push_back(a.exponent - b.exponent);
      }
    }
    std::sort(diffs.begin(), diffs.end());
    diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
    sets.push_back(std::move(diffs));
  }
  return dissociated_sets(sets, cap);
}

}  // namespace riesz
