#pragma once

#include <memory>
#include <vector>

#include "bergman/funcrep.hpp"

namespace bergman {

struct DiscZero {
  Complex point;
  int multiplicity = 1;
};

// base^exponent continued analytically from the origin.
//
// The anchor is the leading Taylor coefficient of the power at 0: F(0) when
// base(0) != 0, otherwise the coefficient of z^{t k} where k is the order of
// the zero of base at 0 (t k must then be a nonnegative integer).
//
// Evaluation uses the factorization
//   base(z) = C z^k prod (1 - z/zeta)^m prod (1 - z/r) / prod (1 - conj(a) z)^K
// where zeta runs over zeros in the closed disc and r over zeros outside it.
// The outer and pole factors have positive real part on the disc, so their
// principal powers are the analytic continuation from 0. A disc zero with
// t m an integer contributes an exact integer power; any other disc zero is a
// branch point and evaluation beyond it along the ray from 0 raises BranchError.
class PowerRep {
 public:
  PowerRep(RationalRep base, double exponent, Complex anchor);
  // Same, with zeros of the base in the closed disc known in advance (origin allowed). They are
  // divided out of the numerator exactly instead of being located numerically,
  // which keeps high-order zeros from splitting under rounding.
  static PowerRep with_zeros(RationalRep base, double exponent, Complex anchor,
                             const std::vector<DiscZero>& zeros);
  // Anchor is the principal power of the leading Taylor coefficient.
  static PowerRep principal(RationalRep base, double exponent);

  const RationalRep& base() const { return base_; }
  double exponent() const { return exponent_; }
  Complex anchor() const { return anchor_; }

  int origin_order() const;
  Complex base_leading_coefficient() const;
  const std::vector<DiscZero>& disc_zeros() const;
  // max relative mismatch between base and its factorization at probe points
  double factorization_residual() const;

  Complex operator()(Complex z) const;

  // F^s, anchored at the principal power of the current anchor.
  PowerRep pow(double s) const;
  // lambda * F.
  PowerRep scaled(Complex lambda) const;
  // Taylor coefficients of F at z0, |z0| < 1.
  TruncatedSeries taylor_at(Complex z0, int n) const;

 private:
  struct Factorization;
  PowerRep(RationalRep base, double exponent, Complex anchor,
           std::shared_ptr<const Factorization> fac);
  static std::shared_ptr<const Factorization> factorize(const RationalRep& base,
                                                       const std::vector<DiscZero>& known = {});
  void validate() const;
  Complex eval_excluding(Complex z, int skip_zero) const;

  RationalRep base_;
  double exponent_ = 1.0;
  Complex anchor_;
  std::shared_ptr<const Factorization> fac_;
};

Complex eval_power(const PowerRep& f, Complex z);

// Disc roots closer than this are treated as one multiple root.
inline constexpr double kRootClusterTol = 1e-4;

}  // namespace bergman
