#include "core/factorization.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace riesz {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// p and p' at z via dense Horner.
void horner2(const std::vector<Complex>& c, Complex z, Complex& pv, Complex& dv) {
  const std::size_t n = c.size();
  pv = c[n - 1];
  dv = Complex(0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    dv = dv * z + pv;
    pv = pv * z + c[i];
  }
}

double eval_bound(const std::vector<Complex>& c, double r) {
  double bound = 0.0;
  double rp = 1.0;
  for (const Complex& ci : c) {
    bound += std::abs(ci) * rp;
    rp *= r;
  }
  return bound;
}

// Initial guesses on circles whose radii come from the upper convex hull of
// (i, log|c_i|) over non-vanishing coefficients (Newton polygon radii). For
// sparse polynomials with huge gaps this seeds every annulus of roots.
std::vector<Complex> initial_guesses(const TrigPoly& p) {
  struct HullPoint {
    std::int64_t i;
    double logc;
  };
  std::vector<HullPoint> pts;
  pts.reserve(p.term_count());
  for (const Term& t : p.terms()) pts.push_back({t.exponent, std::log(std::abs(t.coeff))});

  std::vector<HullPoint> hull;
  for (const HullPoint& q : pts) {
    while (hull.size() >= 2) {
      const HullPoint& a = hull[hull.size() - 2];
      const HullPoint& b = hull[hull.size() - 1];
      const double cross = (double)(b.i - a.i) * (q.logc - a.logc) -
                           (double)(q.i - a.i) * (b.logc - a.logc);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(q);
  }

  std::vector<Complex> z;
  z.reserve(static_cast<std::size_t>(p.degree()));
  std::size_t seg = 0;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s, ++seg) {
    const std::int64_t k = hull[s + 1].i - hull[s].i;
    double r = std::exp((hull[s].logc - hull[s + 1].logc) / static_cast<double>(k));
    r = std::clamp(r, 1e-8, 1e8);
    const double phase = 0.39996322972865332 + 0.7 * static_cast<double>(seg);
    for (std::int64_t j = 0; j < k; ++j) {
      z.push_back(std::polar(r, kTwoPi * (static_cast<double>(j) + 0.3) /
                                     static_cast<double>(k) +
                                 phase));
    }
  }
  return z;
}

double cauchy_bound(const std::vector<Complex>& coeffs) {
  const double lead = std::abs(coeffs.back());
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) worst = std::max(worst, std::abs(coeffs[i]));
  return 1.0 + worst / lead;
}

bool aberth(const std::vector<Complex>& coeffs, std::vector<Complex>& z, double tol) {
  const std::size_t n = z.size();
  const double bound = cauchy_bound(coeffs);
  const int max_iter = 400;
  for (int iter = 0; iter < max_iter; ++iter) {
    bool all_small = true;
    for (std::size_t i = 0; i < n; ++i) {
      // Runaway iterates overflow the evaluation; pull them back inside the
      // Cauchy bound, which contains every root.
      if (!std::isfinite(std::abs(z[i])) || std::abs(z[i]) > 2.0 * bound) {
        z[i] = std::polar(0.9 * bound, 0.39996 + 2.39996 * static_cast<double>(i));
        all_small = false;
      }
      Complex pv, dv;
      horner2(coeffs, z[i], pv, dv);
      if (std::abs(pv) == 0.0) continue;
      if (!std::isfinite(std::abs(pv)) || !std::isfinite(std::abs(dv)) || std::abs(dv) == 0.0) {
        z[i] = std::polar(0.5 * bound, 1.1 + 2.39996 * static_cast<double>(i));
        all_small = false;
        continue;
      }
      const Complex newton = pv / dv;
      Complex repel(0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const Complex d = z[i] - z[j];
        const double d2 = std::norm(d);
        if (d2 < 1e-60) continue;
        repel += std::conj(d) / d2;
      }
      const Complex denom = Complex(1.0) - newton * repel;
      Complex w = (std::abs(denom) < 1e-300) ? newton : newton / denom;
      if (!std::isfinite(std::abs(w))) w = newton;
      z[i] -= w;
      if (std::abs(w) > tol * std::max(1.0, std::abs(z[i]))) all_small = false;
    }
    if (all_small) return true;
  }
  return false;
}

std::vector<Complex> companion_roots(const std::vector<Complex>& coeffs) {
  const std::size_t n = coeffs.size() - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -coeffs[i] / coeffs[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) fail(Error::Code::numeric, "companion eigensolver failed");
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  return z;
}

void polish(const std::vector<Complex>& coeffs, std::vector<Complex>& z) {
  for (Complex& r : z) {
    for (int k = 0; k < 8; ++k) {
      Complex pv, dv;
      horner2(coeffs, r, pv, dv);
      if (!std::isfinite(std::abs(pv)) || std::abs(dv) == 0.0) break;
      const Complex step = pv / dv;
      if (!std::isfinite(std::abs(step))) break;
      if (std::abs(step) > 0.1 * std::max(1.0, std::abs(r))) break;  // multiple root, leave to merge
      r -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(r))) break;
    }
  }
}

double worst_residual(const std::vector<Complex>& coeffs, const std::vector<Complex>& z) {
  double worst = 0.0;
  for (const Complex& r : z) {
    if (!std::isfinite(std::abs(r))) return std::numeric_limits<double>::infinity();
    Complex pv, dv;
    horner2(coeffs, r, pv, dv);
    if (!std::isfinite(std::abs(pv)) || !std::isfinite(std::abs(dv))) {
      return std::numeric_limits<double>::infinity();
    }
    const double scale = std::max(std::abs(dv) * std::max(1.0, std::abs(r)),
                                  1e-30 + std::numeric_limits<double>::epsilon() *
                                              eval_bound(coeffs, std::abs(r)));
    const double res = std::abs(pv) / scale;
    if (!std::isfinite(res)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, res);
  }
  return worst;
}

std::vector<RootCluster> merge_clusters(std::vector<Complex> z, double tol,
                                        const std::vector<Complex>& coeffs) {
  std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<bool> used(z.size(), false);
  std::vector<RootCluster> out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    // Greedy cluster sweep; the radius accommodates the eps^(1/m) smearing of
    // multiple roots in double precision.
    std::vector<std::size_t> members = {i};
    const double radius = std::max(10.0 * tol, 2e-7) * (1.0 + std::abs(z[i]));
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(z[j] - z[i]) <= radius) {
        members.push_back(j);
        used[j] = true;
      }
    }
    Complex centroid(0.0);
    for (std::size_t m : members) centroid += z[m];
    centroid /= static_cast<double>(members.size());

    if (members.size() > 1) {
      // Re-center a multiple root on the (m-1)-th derivative, where it is simple.
      std::vector<Complex> d = coeffs;
      for (std::size_t k = 1; k < members.size(); ++k) {
        for (std::size_t j = 1; j < d.size(); ++j) d[j - 1] = d[j] * static_cast<double>(j);
        d.pop_back();
      }
      for (int it = 0; it < 5 && d.size() >= 2; ++it) {
        Complex pv, dv;
        horner2(d, centroid, pv, dv);
        if (std::abs(dv) == 0.0) break;
        centroid -= pv / dv;
      }
    }
    out.push_back({centroid, static_cast<int>(members.size())});
  }
  return out;
}

}  // namespace

Complex InnerFactor::eval(Complex z) const {
  Complex acc = unimodular;
  for (const Complex& a : zeros) acc *= (z - a) / (Complex(1.0) - std::conj(a) * z);
  return acc;
}

std::vector<RootCluster> find_roots(const TrigPoly& p, double tol) {
  if (p.degree() < 1) fail(Error::Code::invalid_argument, "find_roots requires degree >= 1");
  if (std::abs(p.constant_term()) < TrigPoly::kZeroThreshold) {
    fail(Error::Code::invalid_argument, "zero constant term");
  }
  if (p.degree() > kMaxRootDegree) {
    fail(Error::Code::invalid_argument, "root enumeration refused above degree 32768");
  }
  const std::vector<Complex> coeffs = p.dense_coeffs();

  std::vector<Complex> z = initial_guesses(p);
  bool ok = aberth(coeffs, z, std::min(tol, 1e-11));
  polish(coeffs, z);
  double resid = worst_residual(coeffs, z);

  if ((!ok || resid > tol) && p.degree() <= kMaxCompanionDegree) {
    std::vector<Complex> zc = companion_roots(coeffs);
    polish(coeffs, zc);
    const double resid_c = worst_residual(coeffs, zc);
    if (resid_c < resid) {
      z.swap(zc);
      resid = resid_c;
    }
  }
  if (resid > std::max(tol, 1e-8)) {
    fail(Error::Code::numeric,
         "root finding did not converge; best residual " + std::to_string(resid));
  }
  return merge_clusters(std::move(z), tol, coeffs);
}

RootClassification classify_roots(const std::vector<RootCluster>& roots, double eps_circle) {
  RootClassification out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double m = std::abs(roots[i].location);
    if (m < 1.0 - eps_circle) {
      out.inside.push_back(i);
    } else if (m > 1.0 + eps_circle) {
      out.outside.push_back(i);
    } else {
      out.on_circle.push_back(i);
    }
  }
  return out;
}

Factorization inner_outer(const TrigPoly& p, double tol, double eps_circle) {
  if (std::abs(p.constant_term()) < TrigPoly::kZeroThreshold) {
    fail(Error::Code::invalid_argument, "zero constant term");
  }

  Factorization f;
  if (p.degree() == 0) {
    const Complex c = p.constant_term();
    f.alpha = std::abs(c);
    f.mahler = std::abs(c);
    f.inner.unimodular = c / std::abs(c);
    f.outer = TrigPoly::constant(std::abs(c));
    return f;
  }

  f.roots = find_roots(p, tol);
  const RootClassification cls = classify_roots(f.roots, eps_circle);
  f.inside = cls.inside;
  f.on_circle = cls.on_circle;
  f.outside = cls.outside;
  f.circle_distance.reserve(f.roots.size());
  for (const RootCluster& r : f.roots) {
    f.circle_distance.push_back(std::abs(std::abs(r.location) - 1.0));
  }

  // O(z) = gamma * a_m * prod_A (1 - conj(a) z) * prod_B (z-b) * prod_C (z-c).
  std::vector<Complex> outer = {p.leading_coeff()};
  auto mul_linear = [&outer](Complex c0, Complex c1) {
    outer.push_back(Complex(0.0));
    for (std::size_t j = outer.size() - 1; j > 0; --j) outer[j] = outer[j] * c0 + outer[j - 1] * c1;
    outer[0] *= c0;
  };
  for (std::size_t i : f.inside) {
    const RootCluster& r = f.roots[i];
    for (int m = 0; m < r.multiplicity; ++m) {
      mul_linear(Complex(1.0), -std::conj(r.location));
      f.inner.zeros.push_back(r.location);
    }
  }
  for (std::size_t i : f.on_circle) {
    const RootCluster& r = f.roots[i];
    for (int m = 0; m < r.multiplicity; ++m) mul_linear(-r.location, Complex(1.0));
  }
  for (std::size_t i : f.outside) {
    const RootCluster& r = f.roots[i];
    for (int m = 0; m < r.multiplicity; ++m) mul_linear(-r.location, Complex(1.0));
  }

  const Complex t = outer[0];
  if (std::abs(t) == 0.0) fail(Error::Code::numeric, "outer factor lost its constant term");
  const Complex gamma = std::conj(t) / std::abs(t);
  for (Complex& c : outer) c *= gamma;
  outer[0] = Complex(std::abs(t), 0.0);
  f.inner.unimodular = std::conj(gamma);

  f.outer = TrigPoly::from_dense(outer);
  f.alpha = std::abs(t);

  double mahler = std::abs(p.leading_coeff());
  for (std::size_t i : f.outside) {
    const RootCluster& r = f.roots[i];
    for (int m = 0; m < r.multiplicity; ++m) mahler *= std::abs(r.location);
  }
  f.mahler = mahler;
  return f;
}

double outer_constant_term(const TrigPoly& p) {
  if (p.is_zero()) fail(Error::Code::invalid_argument, "empty polynomial");
  // c z^n factors as inner z^n times the constant outer |c|.
  if (p.term_count() == 1) return std::abs(p.terms()[0].coeff);
  if (std::abs(p.constant_term()) < TrigPoly::kZeroThreshold) {
    fail(Error::Code::invalid_argument, "zero constant term");
  }
  if (p.term_count() == 2) {
    // c0 + c1 z^n: all n roots share modulus (|c0|/|c1|)^(1/n), so the outer
    // constant term collapses to max(|c0|, |c1|) for any n.
    return std::max(std::abs(p.terms()[0].coeff), std::abs(p.terms()[1].coeff));
  }
  return inner_outer(p).alpha;
}

double mahler_measure(const TrigPoly& p) {
  if (p.is_zero()) fail(Error::Code::invalid_argument, "empty polynomial");
  if (std::abs(p.constant_term()) < TrigPoly::kZeroThreshold) {
    fail(Error::Code::invalid_argument, "zero constant term");
  }
  if (p.term_count() <= 2) return outer_constant_term(p);
  return inner_outer(p).mahler;
}

namespace {

constexpr double kLogFloor = -750.0;

double log_abs(const TrigPoly& p, double theta, std::size_t& clamped) {
  const double a = std::abs(p.eval_unit(theta));
  if (a < 1e-300) {
    ++clamped;
    return kLogFloor;
  }
  return std::log(a);
}

struct PanelIntegrator {
  const TrigPoly& p;
  std::size_t clamped = 0;
  int depth_cap = 48;

  double simpson(double a, double fa, double fm, double b, double fb) const {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double refine(double a, double fa, double b, double fb, double m, double fm, double whole,
                double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = log_abs(p, lm, clamped), frm = log_abs(p, rm, clamped);
    const double left = simpson(a, fa, flm, m, fm);
    const double right = simpson(m, fm, frm, b, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
      return left + right + (left + right - whole) / 15.0;
    }
    return refine(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           refine(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
  }

  double integrate(double a, double fa, double b, double fb, double tol) {
    const double m = 0.5 * (a + b);
    const double fm = log_abs(p, m, clamped);
    return refine(a, fa, b, fb, m, fm, simpson(a, fa, fm, b, fb), tol, depth_cap);
  }
};

}  // namespace

double mahler_measure_jensen(const TrigPoly& p, std::size_t n) {
  if (p.is_zero()) fail(Error::Code::invalid_argument, "empty polynomial");
  const std::uint64_t floor64 = 4 * static_cast<std::uint64_t>(p.degree()) + 4;
  if (n < floor64) fail(Error::Code::grid, "grid too coarse");

  const std::vector<Complex> values = evaluate_grid(p, n);
  std::vector<double> logs(n + 1);
  std::size_t clamped = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::abs(values[k]);
    if (a < 1e-300) {
      ++clamped;
      logs[k] = kLogFloor;
    } else {
      logs[k] = std::log(a);
    }
  }
  logs[n] = logs[0];
  if (clamped * 100 > n) fail(Error::Code::grid, "degenerate grid");

  PanelIntegrator integ{p};
  const double h = kTwoPi / static_cast<double>(n);
  const double tol_panel = kTwoPi * 1e-9 / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = h * static_cast<double>(k);
    total += integ.integrate(a, logs[k], a + h, logs[k + 1], tol_panel);
  }
  if ((integ.clamped + clamped) * 100 > n) fail(Error::Code::grid, "degenerate grid");
  return std::exp(total / kTwoPi);
}

}  // namespace riesz
