#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace riesz {

using Complex = std::complex<double>;

struct Term {
  std::int64_t exponent = 0;
  Complex coeff;
};

// Sparse analytic trigonometric polynomial sum c_e z^e with nonnegative
// integer exponents stored in strictly increasing order. Immutable after
// construction; all operations below are pure.
class TrigPoly {
 public:
  static constexpr double kZeroThreshold = 1e-300;

  TrigPoly() = default;  // zero polynomial

  // Sorts, merges duplicate exponents, drops coefficients below threshold.
  explicit TrigPoly(std::vector<Term> terms);

  static TrigPoly constant(Complex c) { return TrigPoly({{0, c}}); }
  static TrigPoly monomial(std::int64_t e, Complex c) { return TrigPoly({{e, c}}); }
  static TrigPoly from_dense(const std::vector<Complex>& coeffs);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t degree() const { return terms_.empty() ? 0 : terms_.back().exponent; }
  Complex constant_term() const;
  Complex leading_coeff() const { return terms_.empty() ? Complex(0.0) : terms_.back().coeff; }

  // Dense coefficient vector of size degree+1; refused above degree 2^22.
  std::vector<Complex> dense_coeffs() const;

  Complex eval(Complex z) const;       // general point, sparse powers
  Complex eval_unit(double theta) const;  // z = exp(i*theta)

  bool equals(const TrigPoly& other, double tol) const;

 private:
  std::vector<Term> terms_;
};

struct Normalization {
  TrigPoly poly;
  double scale = 1.0;      // positive real multiplier applied
  Complex rotation{1.0};   // unimodular constant applied (1 if no constant term)
};

// Scales so coefficient-modulus squares sum to 1 and rotates so the constant
// term (when present) is positive real. Errors on the zero polynomial.
Normalization normalize_l2_full(const TrigPoly& p);
TrigPoly normalize_l2(const TrigPoly& p);

// Exact coefficient convolution; exponent sums are overflow-checked.
TrigPoly multiply(const TrigPoly& p, const TrigPoly& q);

double l2_norm(const TrigPoly& p);

// Smallest power of two >= max(4*deg+4, 4096).
std::size_t default_grid_size(std::int64_t degree);

// values[k] = p(exp(2*pi*i*k/N)). Power-of-two N uses an aliased FFT,
// otherwise exact integer-angle per-term evaluation.
std::vector<Complex> evaluate_grid(const TrigPoly& p, std::size_t n);

// Grid mean of |p| and grid maximum of |p|; both require N >= 2*deg+1.
double l1_norm(const TrigPoly& p, std::size_t n);
double sup_norm(const TrigPoly& p, std::size_t n);

// p(z^q): exponents multiplied by q (overflow-checked), coefficients kept.
TrigPoly contract(const TrigPoly& p, std::int64_t q);

struct Selection {
  // One chosen exponent per polynomial, in list order.
  std::vector<std::int64_t> exponents;
};

struct DissociationResult {
  bool dissociated = false;
  // Present only on failure: two distinct selections with equal exponent sum.
  std::optional<std::pair<Selection, Selection>> witness;
};

inline constexpr std::uint64_t kDissociationCap = 1000000;

// True iff every selection of one term exponent per polynomial yields a
// distinct sum. Uses a gap certificate when it applies, exact enumeration
// below the cap, and an incremental sorted-sumset merge otherwise; errors
// with "dissociation check infeasible" rather than guessing.
DissociationResult is_dissociated(const std::vector<TrigPoly>& ps,
                                  std::uint64_t cap = kDissociationCap);

// Same check for the modulus-squares |p_j|^2, whose formal exponents are the
// differences e - f of exponents of p_j.
DissociationResult is_dissociated_modsq(const std::vector<TrigPoly>& ps,
                                        std::uint64_t cap = kDissociationCap);

// Shared engine on explicit exponent sets (each strictly increasing).
DissociationResult dissociated_sets(const std::vector<std::vector<std::int64_t>>& sets,
                                    std::uint64_t cap);

std::int64_t checked_add(std::int64_t a, std::int64_t b, const std::string& what);
std::int64_t checked_mul(std::int64_t a, std::int64_t b, const std::string& what);

}  // namespace riesz
