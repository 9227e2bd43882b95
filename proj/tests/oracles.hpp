#pragma once
// Test-only reference computations, independent of the library code paths
// they are used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;

// Taylor coefficients of f at z0 by the Cauchy integral on a small circle.
inline std::vector<C> cauchy_taylor(const std::function<C(C)>& f, C z0, int n, double radius,
                                    int nodes = 256) {
  std::vector<C> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    C acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
      const double th = 2.0 * std::numbers::pi * j / nodes;
      acc += f(z0 + std::polar(radius, th)) * std::polar(std::pow(radius, -k), -k * th);
    }
    out[k] = acc / static_cast<double>(nodes);
  }
  return out;
}

// int z^m conj(z)^n dsigma over the unit disc.
inline double monomial_moment(int m, int n) { return m == n ? 1.0 / (m + 1) : 0.0; }

// Exact pairing of two polynomials in z and conj(z) given as coefficient grids
// c[m][n] multiplying z^m conj(z)^n.
inline C exact_integral(const std::vector<std::vector<C>>& c) {
  C acc = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m)
    for (std::size_t n = 0; n < c[m].size(); ++n) acc += c[m][n] * monomial_moment(m, n);
  return acc;
}

inline C random_in_disc(std::mt19937_64& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = rmin + (rmax - rmin) * u(rng);
  return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

inline C random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  return {g(rng), g(rng)};
}

}  // namespace oracle
