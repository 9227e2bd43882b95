#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "bergman/divisor.hpp"
#include "bergman/projection.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

struct OracleConfig {
  int degree = 24;  // truncation degree D
  DiscRule rule = make_rule();
  int max_iters = 20000;
  double step_tol = 1e-12;
  double objective_tol = 1e-15;
  // 0 starts from the minimal-L2 solution of the constraints; any other value
  // adds a seeded random offset inside the constraint set
  std::uint64_t restart_seed = 0;
};

struct OracleResult {
  Poly coeffs;
  double norm = 0.0;
  int iterations = 0;
};

// sum_i w_i |f(z_i)|^p for f = sum_k y_k sqrt(k+1) z^k; the scaling makes the
// monomials orthonormal in A^2.
class NormObjective {
 public:
  NormObjective(double p, int degree, const DiscRule& rule);

  double value(const Eigen::VectorXcd& y) const;
  // gradient with respect to (Re y, Im y), packed as a complex vector
  Eigen::VectorXcd gradient(const Eigen::VectorXcd& y) const;
  double value_and_gradient(const Eigen::VectorXcd& y, Eigen::VectorXcd& grad) const;

  double scale(int k) const { return std::sqrt(static_cast<double>(k + 1)); }
  int degree() const { return degree_; }

 private:
  double p_;
  int degree_;
  Eigen::MatrixXcd V_;  // V(i, k) = sqrt(k+1) z_i^k
  Eigen::VectorXd w_;
};

using Constraint = std::pair<FunctionalSpec, Complex>;

// min ||f||_p over polynomials of degree <= D with phi_i(f) = target_i.
OracleResult brute_force_min_norm(double p, const std::vector<Constraint>& constraints,
                                  const OracleConfig& cfg = {});

struct CanonicalOracleResult {
  Poly coeffs;                // G = f / ||f||_p
  double leading_value = 0.0;  // G^{(m)}(0), m the order of the zero set at 0
  double norm = 0.0;           // ||f||_p of the unnormalized minimizer
};

CanonicalOracleResult brute_force_canonical(double p, const ZeroSet& zeros,
                                            const OracleConfig& cfg = {});

// max over h = z^j, j <= degree, of
//   |int h |F|^{p-1} conj(sgn F) dsigma - phi(h) / ||phi|||
// where phi(h) = <h, k> and ||phi|| = Re <F, k> (valid at the extremal).
double extremality_defect(const Evaluable& F, double p, const Evaluable& k, const DiscRule& rule,
                          int degree = 10);

}  // namespace bergman
