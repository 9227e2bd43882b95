#include "bergman/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

DiscRule::DiscRule(std::vector<Radial> radial, int n_angular)
    : radial_(std::move(radial)), n_angular_(n_angular) {
  nodes_.reserve(radial_.size() * n_angular_);
  for (const Radial& rw : radial_) {
    for (int k = 0; k < n_angular_; ++k) {
      const double th = 2.0 * std::numbers::pi * k / n_angular_;
      nodes_.push_back(Node{std::polar(rw.r, th), rw.w / n_angular_});
    }
  }
}

DiscRule make_rule(int n_radial, int n_angular) {
  if (n_radial < 4) throw DomainError("make_rule: n_radial must be >= 4");
  if (n_angular < 8) throw DomainError("make_rule: n_angular must be >= 8");
  std::vector<double> x, w;
  gauss_legendre(n_radial, x, w);
  // u = (x + 1)/2 in [0, 1]; dsigma = du dtheta / (2 pi)
  std::vector<DiscRule::Radial> radial(n_radial);
  for (int i = 0; i < n_radial; ++i) radial[i] = {std::sqrt(0.5 * (x[i] + 1.0)), 0.5 * w[i]};
  return DiscRule(std::move(radial), n_angular);
}

namespace {
template <typename T>
T pairwise(const T* v, std::size_t n) {
  if (n <= 8) {
    T acc{};
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
  }
  const std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}
}  // namespace

Complex pairwise_sum(const std::vector<Complex>& v) { return pairwise(v.data(), v.size()); }
double pairwise_sum(const std::vector<double>& v) { return pairwise(v.data(), v.size()); }

std::vector<Complex> sample(const Evaluable& f, const DiscRule& rule) {
  std::vector<Complex> out;
  out.reserve(rule.nodes().size());
  for (const auto& node : rule.nodes()) out.push_back(f(node.z));
  return out;
}

Complex integrate(const Evaluable& f, const DiscRule& rule) {
  std::vector<Complex> terms;
  terms.reserve(rule.nodes().size());
  for (const auto& node : rule.nodes()) terms.push_back(node.w * f(node.z));
  return pairwise_sum(terms);
}

double integrate_real(const std::function<double(Complex)>& f, const DiscRule& rule) {
  std::vector<double> terms;
  terms.reserve(rule.nodes().size());
  for (const auto& node : rule.nodes()) terms.push_back(node.w * f(node.z));
  return pairwise_sum(terms);
}

Complex signed_power(Complex value, double p) {
  const double m = std::abs(value);
  if (m < 1e-300) return 0.0;
  return std::pow(m, p - 1.0) * (value / m);
}

Complex pairing(const Evaluable& f, const Evaluable& g, const DiscRule& rule) {
  return integrate([&](Complex z) { return f(z) * std::conj(g(z)); }, rule);
}

double ap_norm(const Evaluable& f, double p, const DiscRule& rule) {
  if (!(p > 0.0)) throw DomainError("ap_norm: p must be positive");
  const double s = integrate_real([&](Complex z) { return std::pow(std::abs(f(z)), p); }, rule);
  return std::pow(s, 1.0 / p);
}

std::vector<Complex> numeric_projection_coeffs(const std::vector<Complex>& samples, int degree,
                                               const DiscRule& rule) {
  if (degree < 0) throw DomainError("numeric_projection: degree must be >= 0");
  const auto& nodes = rule.nodes();
  std::vector<std::vector<Complex>> terms(degree + 1, std::vector<Complex>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Complex zc = std::conj(nodes[i].z);
    Complex v = nodes[i].w * samples[i];
    for (int k = 0; k <= degree; ++k) {
      terms[k][i] = v;
      v *= zc;
    }
  }
  std::vector<Complex> out(degree + 1);
  for (int k = 0; k <= degree; ++k) out[k] = static_cast<double>(k + 1) * pairwise_sum(terms[k]);
  return out;
}

std::vector<Complex> numeric_projection_coeffs(const Evaluable& u, int degree,
                                               const DiscRule& rule) {
  return numeric_projection_coeffs(sample(u, rule), degree, rule);
}

Poly numeric_projection(const Evaluable& u, int degree, const DiscRule& rule) {
  return Poly(numeric_projection_coeffs(u, degree, rule));
}

double dual_pairing_check(const Evaluable& f, const Evaluable& g, int degree,
                          const DiscRule& rule) {
  const Poly pg = numeric_projection(g, degree, rule);
  const Complex lhs = pairing(f, g, rule);
  const Complex rhs = pairing(f, [&](Complex z) { return pg(z); }, rule);
  return std::abs(lhs - rhs);
}

}  // namespace bergman
