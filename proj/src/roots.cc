#include "bergman/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {
namespace {

// p(z) and p'(z) by Horner.
std::pair<Complex, Complex> horner2(const std::vector<Complex>& c, Complex z) {
  Complex p = 0.0, dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

bool aberth(const std::vector<Complex>& c, std::vector<Complex>& z) {
  const int n = static_cast<int>(c.size()) - 1;
  // initial guesses on a circle of the Fujiwara-style radius
  double radius = 0.0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(c[k] / c[n]), 1.0 / (n - k)));
  radius = std::max(radius, 1e-3);
  z.resize(n);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.25) / n + 0.4);

  for (int iter = 0; iter < 800; ++iter) {
    double max_step = 0.0;
    bool all_at_noise = true;
    for (int k = 0; k < n; ++k) {
      const auto [p, dp] = horner2(c, z[k]);
      // backward-error bound: p(z) is indistinguishable from rounding noise
      double mag = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) mag = mag * std::abs(z[k]) + std::abs(*it);
      if (std::abs(p) > 8.0 * std::numeric_limits<double>::epsilon() * mag) all_at_noise = false;
      if (p == 0.0) continue;
      const Complex ratio = p / dp;
      Complex sum = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (max_step < 1e-15 || all_at_noise) return true;
  }
  return false;
}

std::vector<Complex> companion_roots(const std::vector<Complex>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  if (es.info() != Eigen::Success) throw NoConvergence("companion eigenvalue solve failed");
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

}  // namespace

std::vector<Complex> find_roots(const Poly& p) {
  std::vector<Complex> c = p.coeffs();
  if (c.empty()) throw DomainError("find_roots: zero polynomial");
  // trim leading coefficients negligible relative to the rest
  double scale = 0.0;
  for (Complex x : c) scale = std::max(scale, std::abs(x));
  while (c.size() > 1 && std::abs(c.back()) < 1e-14 * scale) c.pop_back();

  std::vector<Complex> roots;
  // exact zeros at the origin
  std::size_t shift = 0;
  while (shift + 1 < c.size() && c[shift] == 0.0) ++shift;
  roots.assign(shift, Complex(0.0));
  c.erase(c.begin(), c.begin() + shift);
  if (c.size() <= 1) return roots;
  if (c.size() == 2) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }

  std::vector<Complex> z;
  if (!aberth(c, z)) z = companion_roots(c);
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double tol) {
  const std::size_t n = roots.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j)
        if (label[j] < 0 && std::abs(roots[j] - roots[k]) < tol) {
          label[j] = next;
          stack.push_back(j);
        }
    }
    ++next;
  }
  std::vector<RootCluster> out(next, RootCluster{0.0, 0});
  for (std::size_t i = 0; i < n; ++i) {
    out[label[i]].center += roots[i];
    out[label[i]].multiplicity += 1;
  }
  for (RootCluster& r : out) r.center /= static_cast<double>(r.multiplicity);
  return out;
}

}  // namespace bergman
