#pragma once

#include <functional>
#include <vector>

#include "bergman/funcrep.hpp"
#include "bergman/power.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// A functional on A^p of one of two kinds:
//   derivative_eval:    f -> coefficient * f^{(order)}(point)
//   averaged_integral:  f -> coefficient * (1/point) int_0^point f(z) dz
struct FunctionalSpec {
  enum class Kind { derivative_eval, averaged_integral };
  Kind kind = Kind::derivative_eval;
  Complex point;
  int order = 0;
  Complex coefficient = 1.0;

  static FunctionalSpec derivative(Complex point, int order, Complex coefficient = 1.0) {
    return {Kind::derivative_eval, point, order, coefficient};
  }
  static FunctionalSpec averaged(Complex point, Complex coefficient = 1.0) {
    return {Kind::averaged_integral, point, 0, coefficient};
  }

  void validate() const;
  // Applies the functional to a polynomial, exactly.
  Complex apply(const Poly& f) const;
};

// The kernel k with phi(f) = int f conj(k) dsigma.
RationalRep kernel_of(const FunctionalSpec& spec);
RationalRep kernel_of(const std::vector<FunctionalSpec>& specs);

// P(z^m conj(z)^n).
Poly project_monomial(int m, int n);

// P(f conj(g)) for a polynomial f and Taylor data of g at 0.
Poly project_poly_conj(const Poly& f, const TruncatedSeries& g_taylor);

// Taylor data of g at a point, at least n + 1 coefficients.
using TaylorProvider = std::function<TruncatedSeries(Complex point, int n)>;

// P(k conj(g)) for k in the polynomial + pole basis without order-1 terms.
// Pole orders at each base point drop by the order of vanishing of g there.
RationalRep project_kernel_conj(const RationalRep& k, const TaylorProvider& g_taylor);

// Weights e_0..e_{K-2} with the pole terms of k at a (top order K) equal to
// sum_n e_n times the kernel of f -> f^{(n)}(a). Empty if a is not a base point.
std::vector<Complex> derivative_kernel_weights(const RationalRep& k, Complex a);

// int f conj(g) dsigma, exactly; g may not carry order-1 pole terms.
Complex a2_inner(const RationalRep& f, const RationalRep& g);

struct ProjectionResult {
  RationalRep value;
  bool symbolic = false;
};

// P(|F|^{p-1} sgn F). Symbolic when p is an even integer and F^{p/2} is
// rational with no order-1 pole terms; otherwise the numeric projection to the
// requested degree.
ProjectionResult project_signed_power(const PowerRep& F, double p, const DiscRule& rule,
                                      int degree);

// F^{p/2} as a rational function when p is even and the exponent allows it.
std::optional<RationalRep> rational_half_power(const PowerRep& F, double p);

}  // namespace bergman
