#pragma once

#include <vector>

#include "bergman/funcrep.hpp"

namespace bergman {

// Product rule for normalized area measure on the unit disc: Gauss-Legendre in
// u = r^2 (exact for polynomials in |z|^2 up to degree 2 n_radial - 1) times the
// uniform trapezoid rule in angle. Weights sum to 1.
class DiscRule {
 public:
  struct Radial {
    double r;
    double w;
  };
  struct Node {
    Complex z;
    double w;
  };

  DiscRule(std::vector<Radial> radial, int n_angular);

  const std::vector<Radial>& radial_nodes() const { return radial_; }
  int n_radial() const { return static_cast<int>(radial_.size()); }
  int n_angular() const { return n_angular_; }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Radial> radial_;
  int n_angular_;
  std::vector<Node> nodes_;
};

inline constexpr int kDefaultRadial = 64;
inline constexpr int kDefaultAngular = 256;

DiscRule make_rule(int n_radial = kDefaultRadial, int n_angular = kDefaultAngular);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Pairwise (tree) summation; the order is fixed by the input length.
Complex pairwise_sum(const std::vector<Complex>& v);
double pairwise_sum(const std::vector<double>& v);

Complex integrate(const Evaluable& f, const DiscRule& rule);
double integrate_real(const std::function<double(Complex)>& f, const DiscRule& rule);

// Samples f at every node of the rule, in node order.
std::vector<Complex> sample(const Evaluable& f, const DiscRule& rule);

// |F|^{p-1} sgn F, taken as 0 where |F| < 1e-300.
Complex signed_power(Complex value, double p);

// int f conj(g) dsigma
Complex pairing(const Evaluable& f, const Evaluable& g, const DiscRule& rule);
double ap_norm(const Evaluable& f, double p, const DiscRule& rule);

// Taylor coefficients (k+1) int u conj(z^k) dsigma of the Bergman projection of u,
// for k = 0..degree. Returned as a raw vector so small trailing values survive.
std::vector<Complex> numeric_projection_coeffs(const Evaluable& u, int degree,
                                               const DiscRule& rule);
std::vector<Complex> numeric_projection_coeffs(const std::vector<Complex>& samples, int degree,
                                               const DiscRule& rule);
Poly numeric_projection(const Evaluable& u, int degree, const DiscRule& rule);

// |<f, g> - <f, P_degree g>| for analytic f.
double dual_pairing_check(const Evaluable& f, const Evaluable& g, int degree,
                          const DiscRule& rule);

}  // namespace bergman
