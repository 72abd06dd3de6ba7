#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Complex / projective arithmetic and dense polynomial operations shared by
// every other module.  All values are IEEE binary64; points on the Riemann
// sphere are kept in normalized projective coordinates so that iteration
// never overflows at poles or at infinity.

namespace jb {

using Complex = std::complex<double>;

constexpr double kCoeffTrimEps = 1e-30;  // leading-coefficient trim threshold

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IndeterminatePoint : Error {
  IndeterminatePoint() : Error("indeterminate point: 0/0 within tolerance") {}
};
struct NoConvergence : Error {
  explicit NoConvergence(const std::string& what) : Error(what) {}
};

bool finite(Complex v);

// Point [z : w] on the Riemann sphere, normalized so max(|z|,|w|) = 1.
// Infinity is [1 : 0].
struct SpherePoint {
  Complex z{0.0, 0.0};
  Complex w{1.0, 0.0};

  SpherePoint() = default;
  SpherePoint(Complex z_, Complex w_);

  static SpherePoint from_affine(Complex v);
  static SpherePoint infinity() { return SpherePoint(Complex(1.0), Complex(0.0)); }

  bool is_infinity(double tol = 1e-14) const { return std::abs(w) <= tol; }
  // Affine coordinate z/w; +inf components when the point is at infinity.
  Complex affine() const { return z / w; }
  // Coordinate in the w = 1/z chart.
  Complex coaffine() const { return w / z; }

  SpherePoint& normalize();
};

// Chordal distance on the sphere of diameter 2.
double chordal(const SpherePoint& a, const SpherePoint& b);

struct Polynomial {
  // Coefficients in ascending degree.  Identically-zero polynomial is {}.
  std::vector<Complex> c;

  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  static Polynomial constant(Complex v);
  // x^k with unit coefficient.
  static Polynomial monomial(int k, Complex coeff = Complex(1.0));

  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero poly
  bool is_zero() const { return c.empty(); }
  Complex lead() const { return c.empty() ? Complex(0.0) : c.back(); }

  Complex eval(Complex x) const;
  Polynomial derivative() const;
  // Coefficient reversal at homogenization degree n >= degree():
  // returns x^n * p(1/x).
  Polynomial reversed(int n) const;

  void trim(double eps = kCoeffTrimEps);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Complex s) const;
  Polynomial pow(int k) const;
};

// Evaluate the degree-max(deg p, deg q) homogenizations of p, q at pt and
// return the normalized projective pair [p^ : q^].  Throws IndeterminatePoint
// if both values vanish below kCoeffTrimEps.
SpherePoint poly_eval_projective(const Polynomial& p, const Polynomial& q,
                                 const SpherePoint& pt);

// Evaluate (p(x), q(x)) homogenized, as a raw (un-normalized) pair.
std::pair<Complex, Complex> homogeneous_eval(const Polynomial& p, const Polynomial& q,
                                             const SpherePoint& pt);

struct RootOptions {
  double tol = 1e-12;      // residual |p(r)| / (1+|r|)^deg
  int max_iterations = 200;
};

// All roots of p (with multiplicity), Aberth-Ehrlich simultaneous iteration.
// Deterministic: initial guesses sit on a fixed circle of radius
// 1 + max|c_k|/|c_lead|.
std::vector<Complex> roots_all(const Polynomial& p, const RootOptions& opt = {});
std::vector<Complex> roots_all(const Polynomial& p, double tol);

// Cluster a root list into (representative, multiplicity) pairs.
std::vector<std::pair<Complex, int>> cluster_roots(std::vector<Complex> roots,
                                                   double tol = 1e-6);

// ---- double-double helpers (compensated mode for |perturbation| < 1e-12) ----

struct DD {
  double hi = 0.0, lo = 0.0;
  DD() = default;
  DD(double h) : hi(h) {}
  DD(double h, double l) : hi(h), lo(l) {}
  explicit operator double() const { return hi + lo; }
};

DD dd_add(DD a, DD b);
DD dd_sub(DD a, DD b);
DD dd_mul(DD a, DD b);
DD dd_div(DD a, DD b);

struct DDComplex {
  DD re, im;
  DDComplex() = default;
  DDComplex(DD r, DD i) : re(r), im(i) {}
  DDComplex(Complex v) : re(v.real()), im(v.imag()) {}
  Complex to_complex() const { return Complex(double(re), double(im)); }
};

DDComplex ddc_add(const DDComplex& a, const DDComplex& b);
DDComplex ddc_mul(const DDComplex& a, const DDComplex& b);

// Compensated Horner evaluation of p at x.
DDComplex eval_dd(const Polynomial& p, const DDComplex& x);

}  // namespace jb
