#include "bergman/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

constexpr double kMinP = 1.1;

double real_dot(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a.adjoint() * b)(0).real();
}

}  // namespace

NormObjective::NormObjective(double p, int degree, const DiscRule& rule)
    : p_(p), degree_(degree) {
  const auto& nodes = rule.nodes();
  const Eigen::Index n = static_cast<Eigen::Index>(nodes.size());
  V_.resize(n, degree + 1);
  w_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w_[i] = nodes[i].w;
    Complex pw = 1.0;
    for (int k = 0; k <= degree; ++k) {
      V_(i, k) = pw * scale(k);
      pw *= nodes[i].z;
    }
  }
}

double NormObjective::value(const Eigen::VectorXcd& y) const {
  const Eigen::VectorXcd f = V_ * y;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) acc += w_[i] * std::pow(std::abs(f[i]), p_);
  return acc;
}

double NormObjective::value_and_gradient(const Eigen::VectorXcd& y, Eigen::VectorXcd& grad) const {
  const Eigen::VectorXcd f = V_ * y;
  Eigen::VectorXcd r(f.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double m = std::abs(f[i]);
    acc += w_[i] * std::pow(m, p_);
    r[i] = m > 0.0 ? w_[i] * p_ * std::pow(m, p_ - 2.0) * f[i] : Complex(0.0);
  }
  grad = V_.adjoint() * r;
  return acc;
}

Eigen::VectorXcd NormObjective::gradient(const Eigen::VectorXcd& y) const {
  Eigen::VectorXcd g;
  value_and_gradient(y, g);
  return g;
}

OracleResult brute_force_min_norm(double p, const std::vector<Constraint>& constraints,
                                  const OracleConfig& cfg) {
  if (!(p >= kMinP) || !std::isfinite(p)) throw DomainError("oracle: p must be >= 1.1");
  if (constraints.empty()) throw DomainError("oracle: at least one constraint required");
  int top = 0;
  for (const auto& [spec, target] : constraints) {
    spec.validate();
    top = std::max(top, spec.order);
  }
  if (cfg.degree < top + 4) throw DomainError("oracle: truncation degree too small for the constraints");

  const int n = cfg.degree + 1;
  const NormObjective obj(p, cfg.degree, cfg.rule);

  // constraint rows in scaled coordinates
  const Eigen::Index m = static_cast<Eigen::Index>(constraints.size());
  Eigen::MatrixXcd B(m, n);
  Eigen::VectorXcd t(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (int k = 0; k < n; ++k) B(i, k) = constraints[i].first.apply(Poly::monomial(k)) * obj.scale(k);
    t[i] = constraints[i].second;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv[sv.size() - 1] < 1e-12 * sv[0])
    throw DomainError("oracle: constraints are linearly dependent on the truncated space");
  Eigen::VectorXcd y = svd.solve(t);
  const Eigen::MatrixXcd Z = svd.matrixV().rightCols(n - m);

  if (cfg.restart_seed != 0) {
    std::mt19937_64 rng(cfg.restart_seed);
    std::normal_distribution<double> g(0.0, 0.5);
    Eigen::VectorXcd w(n - m);
    for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = Complex(g(rng), g(rng));
    y += Z * w;
  }

  Eigen::VectorXcd grad;
  double val = obj.value_and_gradient(y, grad);
  Eigen::VectorXcd d = Z * (Z.adjoint() * grad);
  Eigen::VectorXcd prev_y, prev_d;
  double step = 1.0;
  OracleResult out;
  bool done = false;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const double gg = real_dot(d, d);
    if (gg == 0.0) {
      done = true;
      break;
    }
    // Barzilai-Borwein trial step, then Armijo backtracking
    if (it > 0) {
      const Eigen::VectorXcd s = y - prev_y, q = d - prev_d;
      const double sq = real_dot(s, q);
      if (sq > 0.0) step = real_dot(s, s) / sq;
    }
    prev_y = y;
    prev_d = d;
    Eigen::VectorXcd y_new, g_new;
    double v_new = val;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      y_new = y - step * d;
      v_new = obj.value_and_gradient(y_new, g_new);
      if (v_new <= val - 1e-4 * step * gg) {
        accepted = true;
        break;
      }
      step /= 2.0;
    }
    if (!accepted) {
      // no decrease is representable: at the minimum to working precision
      done = true;
      break;
    }
    const double dy = (y_new - y).norm();
    const double dv = val - v_new;
    y = y_new;
    val = v_new;
    grad = g_new;
    d = Z * (Z.adjoint() * grad);
    if (dy <= cfg.step_tol * std::max(1.0, y.norm()) && dv <= cfg.objective_tol * val) {
      done = true;
      ++it;
      break;
    }
  }
  if (!done) throw NoConvergence("oracle: tolerances not met after max_iters");

  std::vector<Complex> a(n);
  for (int k = 0; k < n; ++k) a[k] = y[k] * obj.scale(k);
  out.coeffs = Poly(std::move(a));
  out.norm = std::pow(val, 1.0 / p);
  out.iterations = it;
  return out;
}

CanonicalOracleResult brute_force_canonical(double p, const ZeroSet& zeros, const OracleConfig& cfg) {
  validate_zero_set(zeros);
  std::vector<Constraint> cons;
  int m = 0;
  for (const ZeroEntry& z : zeros) {
    if (z.point == 0.0) m = z.multiplicity;
    for (int k = 0; k < z.multiplicity; ++k) cons.push_back({FunctionalSpec::derivative(z.point, k), 0.0});
  }
  cons.push_back({FunctionalSpec::derivative(0.0, m), 1.0});
  const OracleResult r = brute_force_min_norm(p, cons, cfg);
  return {r.coeffs * (1.0 / r.norm), 1.0 / r.norm, r.norm};
}

double extremality_defect(const Evaluable& F, double p, const Evaluable& k, const DiscRule& rule,
                          int degree) {
  auto u = [&F, p](Complex z) { return signed_power(F(z), p); };
  const std::vector<Complex> proj = numeric_projection_coeffs(u, degree, rule);
  const double phi_norm = pairing(F, k, rule).real();
  double worst = 0.0;
  for (int j = 0; j <= degree; ++j) {
    const Complex lhs = std::conj(proj[j]) / static_cast<double>(j + 1);
    const Complex phi = pairing([j](Complex z) { return std::pow(z, j); }, k, rule);
    worst = std::max(worst, std::abs(lhs - phi / phi_norm));
  }
  return worst;
}

}  // namespace bergman
