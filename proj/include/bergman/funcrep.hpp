#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bergman/series.hpp"
#include "bergman/types.hpp"

namespace bergman {

// Polynomial in z; coeffs()[k] multiplies z^k. Trailing coefficients below
// kDropTol are removed, so the zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs);
  static Poly monomial(int k, Complex c = 1.0);
  static Poly constant(Complex c) { return monomial(0, c); }

  // std::nullopt for the zero polynomial.
  std::optional<int> degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  Complex coeff(int k) const;
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  Complex operator()(Complex z) const;
  Poly derivative(int order = 1) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(Complex s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, Complex s) { return a *= s; }
  friend Poly operator*(Complex s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);

 private:
  void normalize();
  std::vector<Complex> coeffs_;
};

// coef / (1 - conj(a) z)^order, with 0 < |a| < 1 and order >= 1.
struct PoleTerm {
  Complex a;
  int order = 1;
  Complex coef;

  Complex operator()(Complex z) const;
};

// Polynomial part plus a sum of pole terms. Terms sharing (a, order) are merged
// and negligible coefficients dropped, so the representation is canonical.
class RationalRep {
 public:
  RationalRep() = default;
  RationalRep(Poly poly);  // NOLINT(google-explicit-constructor)
  RationalRep(Poly poly, std::vector<PoleTerm> terms);
  static RationalRep pole(Complex a, int order, Complex coef = 1.0);

  const Poly& poly() const { return poly_; }
  const std::vector<PoleTerm>& terms() const { return terms_; }
  bool is_poly() const { return terms_.empty(); }

  // Distinct base points, in canonical order.
  std::vector<Complex> base_points() const;
  // Highest pole order at base point a (0 if a is not a base point).
  int max_order_at(Complex a) const;

  Complex operator()(Complex z) const;

  RationalRep& operator+=(const RationalRep& o);
  RationalRep& operator-=(const RationalRep& o);
  RationalRep& operator*=(Complex s);
  friend RationalRep operator+(RationalRep a, const RationalRep& b) { return a += b; }
  friend RationalRep operator-(RationalRep a, const RationalRep& b) { return a -= b; }
  friend RationalRep operator*(RationalRep a, Complex s) { return a *= s; }
  friend RationalRep operator*(Complex s, RationalRep a) { return a *= s; }

 private:
  void normalize();
  Poly poly_;
  std::vector<PoleTerm> terms_;
};

// Base points closer than this are identified.
inline constexpr double kBasePointTol = 1e-14;

bool same_point(Complex a, Complex b);

Complex eval(const RationalRep& f, Complex z);

// Exact symbolic derivative of the given order.
RationalRep derivative(const RationalRep& f, int order);

// b_j with z^n/(1 - conj(a) z)^{n+2} = sum_{j=2}^{n+2} b_j/(1 - conj(a) z)^j.
std::map<int, Complex> partial_fractions_shifted_monomial(int n, Complex a);

// Residue of f at 1/conj(a); only order-1 terms contribute (-coef/conj(a)).
Complex residue_at_pole(const RationalRep& f, Complex a);

TruncatedSeries taylor_at_origin(const RationalRep& f, int n);
// Taylor coefficients of f at z0 (|z0| < 1).
TruncatedSeries taylor_at(const RationalRep& f, Complex z0, int n);

// Exact product re-expressed in the polynomial + pole basis.
RationalRep mul(const RationalRep& f, const RationalRep& g);
RationalRep power(const RationalRep& f, int n);

// f = numerator / prod_a (1 - conj(a) z)^{K_a}.
struct NumeratorForm {
  Poly numerator;
  std::vector<std::pair<Complex, int>> denominator;  // (a, K_a)
};
NumeratorForm numerator_form(const RationalRep& f);

// (1/2 pi i) times the contour integral of f over the circle |z - center| = radius,
// by the trapezoid rule with the given node count.
Complex contour_residue(const Evaluable& f, Complex center, double radius, int nodes);

}  // namespace bergman
