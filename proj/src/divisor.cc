#include "bergman/divisor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

constexpr double kDegenerate = 1e-10;
// at least this many Taylor coefficients enter the kernel-span fit
constexpr int kSpanDegree = 48;

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (Complex c : v) m = std::max(m, std::abs(c));
  return m;
}

// least-squares residual of y against the columns, max abs entry
double span_residual(const Eigen::MatrixXcd& cols, const Eigen::VectorXcd& y) {
  if (cols.cols() == 0) return y.cwiseAbs().maxCoeff();
  // equilibrate columns; kernels at different points differ in scale
  Eigen::VectorXd scale = cols.colwise().norm().transpose();
  Eigen::MatrixXcd A = cols;
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    if (scale[j] > 0.0) A.col(j) /= scale[j];
  const Eigen::VectorXcd x = A.completeOrthogonalDecomposition().solve(y);
  return (A * x - y).cwiseAbs().maxCoeff();
}

}  // namespace

void validate_zero_set(const ZeroSet& zeros) {
  if (zeros.empty()) throw DomainError("divisor: zero set must be nonempty");
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    const ZeroEntry& z = zeros[i];
    if (!std::isfinite(z.point.real()) || !std::isfinite(z.point.imag()) || !(std::abs(z.point) < 1.0))
      throw DomainError("divisor: zeros must lie in the open disc");
    if (z.multiplicity < 1) throw DomainError("divisor: multiplicities must be >= 1");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(zeros[j].point - z.point) < 1e-12)
        throw DomainError("divisor: zero points must be distinct");
  }
}

RationalRep DivisorAnsatz::expanded() const {
  std::vector<Complex> poly(origin_block);
  if (origin_order > 0) {
    poly.resize(origin_order + 1, 0.0);
    poly[origin_order] += c0;
  } else {
    poly = {c0};
  }
  std::vector<PoleTerm> terms;
  for (const PoleBlock& b : pole_blocks)
    for (std::size_t j = 0; j < b.coefs.size(); ++j)
      terms.push_back(PoleTerm{b.point, static_cast<int>(j) + 2, b.coefs[j]});
  return RationalRep(Poly(std::move(poly)), std::move(terms));
}

DivisorSolution canonical_divisor(int p, const ZeroSet& zeros_in, const SolverOptions& opts) {
  if (p < 2 || p % 2 != 0) throw DomainError("divisor: p must be an even integer >= 2");
  validate_zero_set(zeros_in);
  const int M = p / 2;

  // origin first, then the rest in input order
  ZeroSet zeros;
  for (const ZeroEntry& z : zeros_in)
    if (z.point == 0.0) zeros.push_back(z);
  const bool origin = !zeros.empty();
  for (const ZeroEntry& z : zeros_in)
    if (z.point != 0.0) zeros.push_back(z);

  // unknowns: c0, then origin block, then pole blocks
  std::vector<RationalRep> basis;
  const int m0 = origin ? M * zeros[0].multiplicity : 0;
  basis.emplace_back(Poly::monomial(m0));
  for (int j = 0; j < m0; ++j) basis.emplace_back(Poly::monomial(j));
  for (const ZeroEntry& z : zeros) {
    if (z.point == 0.0) continue;
    for (int j = 0; j < M * z.multiplicity; ++j) basis.push_back(RationalRep::pole(z.point, j + 2));
  }

  // rows: derivatives of order < M d_n vanish at z_n, scaled to Taylor coefficients
  std::vector<std::pair<Complex, int>> rows;
  for (const ZeroEntry& z : zeros)
    for (int k = 0; k < M * z.multiplicity; ++k) rows.emplace_back(z.point, k);
  const Eigen::Index n_rows = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index n_cols = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd A(n_rows, n_cols);
  for (Eigen::Index j = 0; j < n_cols; ++j) {
    std::vector<RationalRep> derivs = {basis[j]};
    for (Eigen::Index i = 0; i < n_rows; ++i) {
      const auto [pt, k] = rows[i];
      while (static_cast<int>(derivs.size()) <= k) derivs.push_back(derivative(derivs.back(), 1));
      A(i, j) = derivs[k](pt) / factorial(k);
    }
  }
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    const double nr = A.row(i).norm();
    if (nr > 0.0) A.row(i) /= nr;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  DivisorSolution out{{PowerRep(RationalRep(Poly::constant(1.0)), 1.0, 1.0), 0.0, {}, {}}, {}, 0, 0.0, {}, 0.0};
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  out.null_gap = sv[sv.size() - 1] / sv[0];
  if (out.null_gap < kDegenerate)
    throw DegenerateNullSpace("divisor: null space dimension > 1 (sigma_min/sigma_max = " +
                              std::to_string(out.null_gap) + ")");
  const Eigen::VectorXcd v = svd.matrixV().col(n_cols - 1);

  // G^M = sum v_j basis_j, then fix phase and norm
  RationalRep ansatz;
  for (Eigen::Index j = 0; j < n_cols; ++j) ansatz += basis[j] * v[j];
  const Complex lead = taylor_at_origin(ansatz, m0)[m0];
  if (std::abs(lead) < 1e-12 * v.cwiseAbs().maxCoeff())
    throw DegenerateNullSpace("divisor: null vector vanishes to excess order at the origin");
  const double norm = std::sqrt(a2_inner(ansatz, ansatz).real());
  const Complex phase = std::conj(lead) / std::abs(lead) / norm;

  DivisorAnsatz& an = out.ansatz;
  an.M = M;
  an.origin_order = m0;
  an.c0 = v[0] * phase;
  Eigen::Index idx = 1;
  for (int j = 0; j < m0; ++j) an.origin_block.push_back(v[idx++] * phase);
  for (const ZeroEntry& z : zeros) {
    if (z.point == 0.0) continue;
    DivisorAnsatz::PoleBlock b{z.point, {}};
    for (int j = 0; j < M * z.multiplicity; ++j) b.coefs.push_back(v[idx++] * phase);
    an.pole_blocks.push_back(std::move(b));
  }
  const RationalRep h = an.expanded();
  // phase-fixed: real and positive up to rounding
  const double lead_pos = std::abs(taylor_at_origin(h, m0)[m0]);

  SolutionReport& rep = out.report;
  std::vector<DiscZero> declared;
  for (const ZeroEntry& z : zeros) declared.push_back({z.point, M * z.multiplicity});
  rep.F = PowerRep::with_zeros(h, 1.0 / M, std::pow(lead_pos, 1.0 / M), declared);
  out.leading_order = origin ? zeros[0].multiplicity : 0;
  out.leading_value = factorial(out.leading_order) * std::pow(lead_pos, 1.0 / M);
  rep.norm = ap_norm(rep.F, p, opts.rule);

  // certificate: P(|G|^{p-1} sgn G) in the span of the constraint kernels
  Certificate& cert = rep.certificate;
  cert.kind = "kernel_span";
  cert.allowed_degree = out.leading_order;
  cert.tolerance = opts.cert_tol;
  const int D = std::max(kSpanDegree, out.leading_order + opts.extra_degree);
  auto u = [&rep, p](Complex z) { return signed_power(rep.F(z), p); };
  cert.projection = numeric_projection_coeffs(u, D, opts.rule);
  std::vector<FunctionalSpec> allowed;
  for (int k = 0; k <= out.leading_order; ++k) allowed.push_back(FunctionalSpec::derivative(0.0, k));
  for (const ZeroEntry& z : zeros)
    if (z.point != 0.0)
      for (int k = 0; k < z.multiplicity; ++k) allowed.push_back(FunctionalSpec::derivative(z.point, k));
  Eigen::MatrixXcd cols(D + 1, static_cast<Eigen::Index>(allowed.size()));
  for (std::size_t j = 0; j < allowed.size(); ++j) {
    const TruncatedSeries t = taylor_at_origin(kernel_of(allowed[j]), D);
    for (int k = 0; k <= D; ++k) cols(k, static_cast<Eigen::Index>(j)) = t[k];
  }
  Eigen::VectorXcd y(D + 1);
  for (int k = 0; k <= D; ++k) y[k] = cert.projection[k];
  cert.max_offending = span_residual(cols, y);

  // exact side: structure of the symbolic projection and the vanishing orders
  bool structure = true;
  const ProjectionResult sym = project_signed_power(rep.F, p, opts.rule, D);
  if (sym.symbolic) {
    structure = sym.value.poly().degree().value_or(-1) <= out.leading_order;
    for (Complex pt : sym.value.base_points()) {
      int allowed_order = 0;
      for (const ZeroEntry& z : zeros)
        if (z.point != 0.0 && same_point(z.point, pt)) allowed_order = z.multiplicity + 1;
      structure = structure && sym.value.max_order_at(pt) <= allowed_order;
    }
  }
  double vanish = 0.0, exact_order = 1.0;
  const double scale = std::max(std::abs(an.c0), max_abs(an.origin_block));
  for (const ZeroEntry& z : zeros) {
    const int order = M * z.multiplicity;
    const TruncatedSeries t = taylor_at(h, z.point, order);
    for (int k = 0; k < order; ++k) vanish = std::max(vanish, std::abs(t[k]));
    exact_order = std::min(exact_order, std::abs(t[order]));
  }
  const bool orders_ok = vanish < 1e-10 * std::max(1.0, scale) && exact_order > 1e-8;
  cert.symbolic = structure && orders_ok;
  cert.details.emplace_back("vanishing_defect", vanish);
  cert.details.emplace_back("min_leading_coefficient_at_zeros", exact_order);
  cert.details.emplace_back("residue_max", validate_residues(an));
  if (!cert.passed())
    throw CertificateFailed("divisor: offending projection mass " + std::to_string(cert.max_offending));
  return out;
}

double validate_residues(const RationalRep& f) {
  const std::vector<Complex> pts = f.base_points();
  double worst = 0.0;
  for (Complex a : pts) {
    const Complex pole = 1.0 / std::conj(a);
    double radius = 1.0;
    for (Complex b : pts)
      if (!same_point(a, b)) radius = std::min(radius, std::abs(1.0 / std::conj(b) - pole) / 2.0);
    worst = std::max(worst, std::abs(contour_residue([&f](Complex z) { return f(z); }, pole, radius, 256)));
  }
  return worst;
}

double validate_residues(const DivisorAnsatz& ansatz) {
  if (ansatz.pole_blocks.empty()) return 0.0;
  return validate_residues(ansatz.expanded());
}

}  // namespace bergman
