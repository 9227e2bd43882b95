#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bergman/power.hpp"
#include "bergman/projection.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// Numeric evidence that P(|F|^{p-1} sgn F) lies in the span the theory requires.
struct Certificate {
  std::string kind;         // "projection_degree", "kernel_multiple" or "kernel_span"
  int allowed_degree = -1;  // for projection_degree
  double max_offending = 0.0;
  double tolerance = 1e-6;
  // outcome of the exact structural check, when one exists for this problem
  std::optional<bool> symbolic;
  std::vector<Complex> projection;  // numeric projection coefficients
  std::vector<std::pair<std::string, double>> details;

  bool passed() const { return max_offending < tolerance && symbolic.value_or(true); }
};

struct SolutionReport {
  PowerRep F;
  double norm = 0.0;
  Certificate certificate;
  std::vector<std::string> warnings;
};

struct SolverOptions {
  DiscRule rule = make_rule();
  double cert_tol = 1e-6;
  // numeric projections run this many degrees past the allowed span
  int extra_degree = 16;
};

// Minimize ||g||_p subject to g^{(j)}(0) = derivatives[j], j = 0..N.
struct InterpolationProblem {
  double p = 2.0;
  std::vector<Complex> derivatives;

  void validate() const;
};

// Taylor polynomial of h^{p/2} where h has the prescribed derivatives; F = f^{2/p}.
Poly interpolation_power_poly(const InterpolationProblem& prob);

SolutionReport solve_origin_interpolation(const InterpolationProblem& prob,
                                          const SolverOptions& opts = {});

struct ZnbSolution {
  SolutionReport report;
  Complex a;
};

// Extremal function for the kernel z^N + b in A^p.
ZnbSolution solve_linear_extremal_zNb(double p, int N, Complex b, const SolverOptions& opts = {});

// Forward map of the A^4 one-zero family: (a, b, c) -> (F'(0), F''(0)), and the
// residue condition (scaled by 1/(|a|^2 - 1)).
struct A4Forward {
  Complex v1, v2, residue_condition;
};
A4Forward a4_forward(Complex a, Complex b, Complex c);
// The c that makes the residue condition hold for given a, b.
Complex a4_residue_free_c(Complex a, Complex b);
// F = (1/a) (a - z)/(1 - conj(a) z) (1 + b z + c z^2)^{1/2} with F(0) = 1.
PowerRep a4_function(Complex a, Complex b, Complex c);

struct A4Candidate {
  Complex a, b, c;
  double residual = 0.0;
  double norm = 0.0;
  bool certified = false;
};

struct A4Solution {
  SolutionReport report;
  Complex a, b, c;
  double residual = 0.0;
  std::vector<A4Candidate> alternates;
};

struct A4Options {
  int starts = 32;
  int max_iters = 200;
  double fd_step = 1e-7;
};

A4Solution solve_a4_one_zero(Complex v1, Complex v2, const SolverOptions& opts = {},
                             const A4Options& newton = {});

// max over a basis of polynomials h (degree <= degree) annihilated by every
// allowed functional of |int h |F|^{p-1} conj(sgn F) dsigma|.
double check_extremality(const Evaluable& F, double p, const std::vector<FunctionalSpec>& allowed,
                         const DiscRule& rule, int degree = 12);

// Orthonormal coefficient vectors spanning the polynomials of degree <= degree
// annihilated by every functional.
std::vector<Poly> annihilated_polys(const std::vector<FunctionalSpec>& specs, int degree);

}  // namespace bergman
