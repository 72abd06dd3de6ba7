#include "juliabury/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace jb {

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

SpherePoint::SpherePoint(Complex z_, Complex w_) : z(z_), w(w_) {
  if (!finite(z) || !finite(w)) throw Error("SpherePoint: non-finite component");
  if (std::abs(z) == 0.0 && std::abs(w) == 0.0)
    throw Error("SpherePoint: (0,0) is not a projective point");
  normalize();
}

SpherePoint SpherePoint::from_affine(Complex v) {
  if (!finite(v)) return infinity();
  return SpherePoint(v, Complex(1.0));
}

SpherePoint& SpherePoint::normalize() {
  double m = std::max(std::abs(z), std::abs(w));
  if (m > 0.0 && m != 1.0) {
    z /= m;
    w /= m;
  }
  return *this;
}

double chordal(const SpherePoint& a, const SpherePoint& b) {
  double num = std::abs(a.z * b.w - b.z * a.w);
  double da = std::sqrt(std::norm(a.z) + std::norm(a.w));
  double db = std::sqrt(std::norm(b.z) + std::norm(b.w));
  return 2.0 * num / (da * db);
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : c(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(Complex v) { return Polynomial({v}); }

Polynomial Polynomial::monomial(int k, Complex coeff) {
  std::vector<Complex> c(static_cast<size_t>(k) + 1, Complex(0.0));
  c.back() = coeff;
  return Polynomial(std::move(c));
}

void Polynomial::trim(double eps) {
  while (!c.empty() && std::abs(c.back()) <= eps) c.pop_back();
}

Complex Polynomial::eval(Complex x) const {
  Complex acc(0.0);
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c.size() <= 1) return Polynomial();
  std::vector<Complex> d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * double(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::reversed(int n) const {
  std::vector<Complex> r(static_cast<size_t>(n) + 1, Complex(0.0));
  for (size_t k = 0; k < c.size(); ++k) r[n - k] = c[k];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Complex> r(std::max(c.size(), o.c.size()), Complex(0.0));
  for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + o * Complex(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<Complex> r(c.size() + o.c.size() - 1, Complex(0.0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(Complex s) const {
  std::vector<Complex> r = c;
  for (auto& v : r) v *= s;
  return Polynomial(std::move(r));
}

Polynomial Polynomial::pow(int k) const {
  Polynomial acc = Polynomial::constant(Complex(1.0));
  for (int i = 0; i < k; ++i) acc = acc * (*this);
  return acc;
}

std::pair<Complex, Complex> homogeneous_eval(const Polynomial& p, const Polynomial& q,
                                             const SpherePoint& pt) {
  int n = std::max(p.degree(), q.degree());
  if (n < 0) return {Complex(0.0), Complex(0.0)};
  // Evaluate in the dominant chart so the Horner variable stays in the unit
  // disk; the common scale factor cancels in projective coordinates.
  if (std::abs(pt.w) >= std::abs(pt.z)) {
    Complex t = pt.z / pt.w;
    return {p.eval(t), q.eval(t)};
  }
  Complex s = pt.w / pt.z;
  return {p.reversed(n).eval(s), q.reversed(n).eval(s)};
}

SpherePoint poly_eval_projective(const Polynomial& p, const Polynomial& q,
                                 const SpherePoint& pt) {
  auto [pv, qv] = homogeneous_eval(p, q, pt);
  if (std::abs(pv) < kCoeffTrimEps && std::abs(qv) < kCoeffTrimEps)
    throw IndeterminatePoint();
  return SpherePoint(pv, qv);
}

std::vector<Complex> roots_all(const Polynomial& p, double tol) {
  RootOptions opt;
  opt.tol = tol;
  return roots_all(p, opt);
}

std::vector<Complex> roots_all(const Polynomial& poly, const RootOptions& opt) {
  Polynomial p = poly;
  p.trim();
  int n = p.degree();
  if (n < 1) throw Error("roots_all: degree must be >= 1");

  // Exact zero roots at the origin can be deflated up front; they would
  // otherwise slow the simultaneous iteration (multiple-root clusters).
  std::vector<Complex> roots;
  size_t shift = 0;
  while (shift < p.c.size() - 1 && std::abs(p.c[shift]) == 0.0) ++shift;
  if (shift > 0) {
    roots.assign(shift, Complex(0.0));
    p.c.erase(p.c.begin(), p.c.begin() + shift);
    n = p.degree();
  }
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-p.c[0] / p.c[1]);
    return roots;
  }

  // Monic normalization.
  Complex lead = p.lead();
  std::vector<Complex> a(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) a[i] = p.c[i] / lead;

  double maxc = 0.0;
  for (size_t i = 0; i + 1 < a.size(); ++i) maxc = std::max(maxc, std::abs(a[i]));
  double radius = 1.0 + maxc;

  // Fixed seed circle: deterministic for a given polynomial.
  std::vector<Complex> z(n);
  const double phase0 = 0.4;  // avoid axis-aligned symmetric stalls
  for (int i = 0; i < n; ++i) {
    double th = 2.0 * M_PI * (i + 0.5) / n + phase0;
    z[i] = radius * Complex(std::cos(th), std::sin(th));
  }

  Polynomial pm(std::vector<Complex>(a));
  Polynomial pd = pm.derivative();

  auto residual_ok = [&](Complex r) {
    double denom = std::pow(1.0 + std::abs(r), n);
    return std::abs(pm.eval(r)) / denom <= opt.tol;
  };

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    bool all_ok = true;
    for (int i = 0; i < n; ++i) {
      Complex pv = pm.eval(z[i]);
      double denom = std::pow(1.0 + std::abs(z[i]), n);
      if (std::abs(pv) / denom <= opt.tol) continue;
      all_ok = false;
      Complex dv = pd.eval(z[i]);
      Complex newton = (std::abs(dv) > 0.0) ? pv / dv : Complex(1e-12);
      Complex sum(0.0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        if (std::abs(diff) < 1e-300) diff = Complex(1e-300);
        sum += 1.0 / diff;
      }
      Complex corr = newton / (1.0 - newton * sum);
      if (!finite(corr)) corr = newton;
      z[i] -= corr;
    }
    if (all_ok) break;
  }

  for (int i = 0; i < n; ++i) {
    if (!residual_ok(z[i]))
      throw NoConvergence("roots_all: Aberth-Ehrlich did not converge");
    roots.push_back(z[i]);
  }
  return roots;
}

std::vector<std::pair<Complex, int>> cluster_roots(std::vector<Complex> roots,
                                                   double tol) {
  std::vector<std::pair<Complex, int>> out;
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex sum = roots[i];
    int count = 1;
    used[i] = true;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) <= tol * (1.0 + std::abs(roots[i]))) {
        sum += roots[j];
        ++count;
        used[j] = true;
      }
    }
    out.emplace_back(sum / double(count), count);
  }
  return out;
}

// ---- double-double ----

static inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

static inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

DD dd_add(DD a, DD b) {
  double s, e;
  two_sum(a.hi, b.hi, s, e);
  e += a.lo + b.lo;
  double hi, lo;
  two_sum(s, e, hi, lo);
  return DD(hi, lo);
}

DD dd_sub(DD a, DD b) { return dd_add(a, DD(-b.hi, -b.lo)); }

DD dd_mul(DD a, DD b) {
  double p, e;
  two_prod(a.hi, b.hi, p, e);
  e += a.hi * b.lo + a.lo * b.hi;
  double hi, lo;
  two_sum(p, e, hi, lo);
  return DD(hi, lo);
}

DD dd_div(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(DD(q1), b));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(DD(q2), b));
  double q3 = r.hi / b.hi;
  double hi, lo;
  two_sum(q1, q2, hi, lo);
  return dd_add(DD(hi, lo), DD(q3));
}

DDComplex ddc_add(const DDComplex& a, const DDComplex& b) {
  return DDComplex(dd_add(a.re, b.re), dd_add(a.im, b.im));
}

DDComplex ddc_mul(const DDComplex& a, const DDComplex& b) {
  return DDComplex(dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
                   dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re)));
}

DDComplex eval_dd(const Polynomial& p, const DDComplex& x) {
  DDComplex acc;
  for (size_t i = p.c.size(); i-- > 0;) {
    acc = ddc_add(ddc_mul(acc, x), DDComplex(p.c[i]));
  }
  return acc;
}

}  // namespace jb
