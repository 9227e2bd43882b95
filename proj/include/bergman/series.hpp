#pragma once

#include <span>
#include <vector>

#include "bergman/types.hpp"

namespace bergman {

// Taylor data c_0..c_N of a function at the origin. Index j holds the
// coefficient of z^j; the j-th derivative is j! * c_j.
class TruncatedSeries {
 public:
  TruncatedSeries();  // the constant series (0)
  explicit TruncatedSeries(std::vector<Complex> coeffs);

  // Builds Taylor data from derivative values d_j = f^{(j)}(0).
  static TruncatedSeries from_derivatives(std::span<const Complex> derivs);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex operator[](std::size_t j) const { return coeffs_[j]; }

  std::vector<Complex> derivatives() const;
  TruncatedSeries truncated(int n) const;

 private:
  std::vector<Complex> coeffs_;
};

// Product of two series truncated to the shorter length.
TruncatedSeries truncated_product(const TruncatedSeries& a, const TruncatedSeries& b);

// Taylor coefficients of h^p where h has Taylor data s and h(0)^p = a0.
// Uses the recurrence n c_0 g_n = sum_{k=1}^n (k p - (n - k)) c_k g_{n-k}.
TruncatedSeries beta_power(const TruncatedSeries& s, double p, Complex a0);

// Same map in derivative convention: takes h^{(j)}(0), returns (h^p)^{(j)}(0).
std::vector<Complex> beta_power_derivatives(std::span<const Complex> derivs, double p,
                                            Complex a0);

// max_j |(s^p)^{1/p} - s|_j with the principal branch for a0 = c_0^p.
double beta_roundtrip_defect(const TruncatedSeries& s, double p);

double factorial(int n);
double binomial(int n, int k);

}  // namespace bergman
