#include "bergman/series.hpp"

#include <algorithm>
#include <cmath>

#include "bergman/errors.hpp"

namespace bergman {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

TruncatedSeries::TruncatedSeries() : coeffs_{Complex(0.0)} {}

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("TruncatedSeries needs at least one coefficient");
}

TruncatedSeries TruncatedSeries::from_derivatives(std::span<const Complex> derivs) {
  std::vector<Complex> c(derivs.begin(), derivs.end());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] /= factorial(static_cast<int>(j));
  return TruncatedSeries(std::move(c));
}

std::vector<Complex> TruncatedSeries::derivatives() const {
  std::vector<Complex> d = coeffs_;
  for (std::size_t j = 0; j < d.size(); ++j) d[j] *= factorial(static_cast<int>(j));
  return d;
}

TruncatedSeries TruncatedSeries::truncated(int n) const {
  std::vector<Complex> c(coeffs_.begin(),
                         coeffs_.begin() + std::min<std::size_t>(coeffs_.size(), n + 1));
  return TruncatedSeries(std::move(c));
}

TruncatedSeries truncated_product(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<Complex> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries beta_power(const TruncatedSeries& s, double p, Complex a0) {
  const Complex c0 = s[0];
  if (c0 == 0.0) throw DomainError("beta_power: leading coefficient is zero");
  const double expected = std::pow(std::abs(c0), p);
  if (std::abs(std::abs(a0) - expected) > 1e-12 * std::max(1.0, expected))
    throw DomainError("beta_power: |a0| is not |c0|^p");

  // extended-precision accumulation; the recurrence cancels for large |p|
  using Wide = std::complex<long double>;
  const std::size_t n_max = s.size();
  std::vector<Wide> c(n_max), gw(n_max);
  for (std::size_t k = 0; k < n_max; ++k) c[k] = Wide(s[k].real(), s[k].imag());
  gw[0] = Wide(a0.real(), a0.imag());
  const long double pw = p;
  for (std::size_t n = 1; n < n_max; ++n) {
    Wide acc = 0.0L;
    for (std::size_t k = 1; k <= n; ++k) {
      const long double w = static_cast<long double>(k) * pw - static_cast<long double>(n - k);
      acc += w * c[k] * gw[n - k];
    }
    gw[n] = acc / (static_cast<long double>(n) * c[0]);
  }
  std::vector<Complex> g(n_max);
  for (std::size_t k = 0; k < n_max; ++k)
    g[k] = Complex(static_cast<double>(gw[k].real()), static_cast<double>(gw[k].imag()));
  return TruncatedSeries(std::move(g));
}

std::vector<Complex> beta_power_derivatives(std::span<const Complex> derivs, double p,
                                            Complex a0) {
  return beta_power(TruncatedSeries::from_derivatives(derivs), p, a0).derivatives();
}

double beta_roundtrip_defect(const TruncatedSeries& s, double p) {
  if (p == 0.0) throw DomainError("beta_roundtrip_defect: p must be nonzero");
  const Complex a0 = std::pow(s[0], p);
  const TruncatedSeries forward = beta_power(s, p, a0);
  const TruncatedSeries back = beta_power(forward, 1.0 / p, s[0]);
  double defect = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) defect = std::max(defect, std::abs(back[j] - s[j]));
  return defect;
}

}  // namespace bergman
