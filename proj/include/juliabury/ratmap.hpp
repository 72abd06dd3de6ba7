#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "juliabury/numerics.hpp"

// Rational maps in num/den coefficient form plus the catalog of explicit
// families: unicritical polynomials, their critical-value perturbations,
// McMullen maps, Godillon's cubic family, the Pilgrim-Tan map and Lyubich's
// Q_a, along with hyperbolic-center finding.

namespace jb {

struct DegenerateFamily : Error {
  explicit DegenerateFamily(const std::string& what) : Error(what) {}
};

struct RationalMap {
  Polynomial num, den;
  int degree = 0;

  RationalMap() = default;
  // Checks that num and den share no root within distance 1e-8.
  RationalMap(Polynomial n, Polynomial d);

  SpherePoint eval(const SpherePoint& pt) const {
    return poly_eval_projective(num, den, pt);
  }
  Complex eval_affine(Complex z) const;
  // Compensated evaluation: projective pair via double-double Horner.
  SpherePoint eval_dd_projective(const SpherePoint& pt) const;

  bool is_polynomial(double eps = kCoeffTrimEps) const { return den.degree() <= 0; }
};

// Quotient-rule derivative with the shared denominator power cancelled, so
// the result satisfies the coprimality invariant.
RationalMap derivative(const RationalMap& f);

// Derivative value f'(z) at an affine point (no RationalMap construction).
Complex derivative_at(const RationalMap& f, Complex z);

// 1/f(1/z), num/den by exact coefficient reversal.
RationalMap conjugate_by_reciprocal(const RationalMap& f);
// f(1/z) and 1/f(z).
RationalMap precompose_reciprocal(const RationalMap& f);
RationalMap postcompose_reciprocal(const RationalMap& f);
// f + coeff / z^k.
RationalMap add_pole_at_origin(const RationalMap& f, Complex coeff, int k);
// f + coeff / (z - pole).
RationalMap add_simple_pole(const RationalMap& f, Complex coeff, Complex pole);

// ---- family catalog ----

struct Unicritical {            // z^q + c
  int q = 2;
  Complex c;
};
struct QuarticPerturbed {       // z^2 + c + lambda/(z-c)^2
  Complex c, lambda;
};
struct MultibrotPerturbed {     // z^q + b + mu/(z-b)
  int q = 3;
  Complex b, mu;
};
struct CubicPerturbed {         // 1 + a/z^2 + (1+a+sqrt(-a)) nu / (z-1-nu)
  Complex a, nu;
  int branch = 0;  // 0: principal sqrt branch, 1: the other sheet
};
struct McMullen {               // z^l + c + lambda/z^m
  int ell = 2, m = 2;
  Complex c, lambda;
};
struct Godillon {               // cubic family F_lambda
  Complex lambda;
};
struct PilgrimTan {             // z^2/(1-z^2) + lambda/z^3
  Complex lambda;
};
struct Lyubich {                // 1 + a/z^2
  Complex a;
};
struct TwicePerturbedBasilica {  // reciprocal-conjugated second perturbation of
                                 // z^2-1+lambda/z^3 with pole weight mu, degree 12
  Complex lambda, mu;
};

struct FamilySpec {
  std::variant<Unicritical, QuarticPerturbed, MultibrotPerturbed, CubicPerturbed,
               McMullen, Godillon, PilgrimTan, Lyubich, TwicePerturbedBasilica>
      family;

  std::string name() const;
  std::string to_key_values() const;
  static FamilySpec from_key_values(const std::string& text);
};

RationalMap build(const FamilySpec& spec);

struct CriticalData {
  std::vector<SpherePoint> points;
  std::vector<SpherePoint> values;
  std::vector<int> local_degrees;

  int ramification_sum() const;  // sum of (local_degree - 1)
};

struct RootFindingFailed : Error {
  explicit RootFindingFailed(const std::string& what) : Error(what) {}
};

// Critical points, values and local degrees; the Riemann-Hurwitz count
// sum(local_degree - 1) = 2 deg - 2 holds exactly by construction.
CriticalData critical_data(const RationalMap& f);

struct CenterParam {
  Complex value;
  bool divisor_period = false;  // satisfied already at a proper divisor period
};

// Parameters c with (z -> z^q + c)^period(0) = 0; divisor-period solutions are
// flagged, not removed.
std::vector<CenterParam> find_centers(int q, int period);

// Nonzero a with Q_a^p(0) = 0 for some 3 <= p <= max_period, excluding the
// degenerate a = -(3+sqrt(5))/2 where 1 + a + sqrt(-a) = 0.
std::vector<CenterParam> lyubich_centers(int max_period);

// The parameter excluded by the cubic family: 1 + a + sqrt(-a) = 0 under the
// principal branch.
Complex lyubich_excluded_parameter();

}  // namespace jb
