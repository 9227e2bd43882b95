#include "bergman/extremal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/roots.hpp"

namespace bergman {

namespace {

constexpr double kInDisc = 1.0 - 1e-10;
constexpr double kOnBoundary = 1.0 + 1e-10;
// zeros this close to the circle make the p < 2 integrability hypothesis unverifiable
constexpr double kNearBoundary = 1.05;

bool near_integer(double x, double tol = 1e-9) { return std::abs(x - std::round(x)) <= tol; }

std::string fmt(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Numeric projection of |F|^{p-1} sgn F through degree allowed + extra.
std::vector<Complex> signed_power_projection(const PowerRep& F, double p, int degree,
                                             const DiscRule& rule) {
  auto u = [&F, p](Complex z) { return signed_power(F(z), p); };
  return numeric_projection_coeffs(u, degree, rule);
}

Certificate degree_certificate(const PowerRep& F, double p, int allowed, const SolverOptions& opts) {
  Certificate cert;
  cert.kind = "projection_degree";
  cert.allowed_degree = allowed;
  cert.tolerance = opts.cert_tol;
  cert.projection = signed_power_projection(F, p, allowed + opts.extra_degree, opts.rule);
  for (int k = allowed + 1; k < static_cast<int>(cert.projection.size()); ++k)
    cert.max_offending = std::max(cert.max_offending, std::abs(cert.projection[k]));

  const ProjectionResult sym = project_signed_power(F, p, opts.rule, allowed + opts.extra_degree);
  if (sym.symbolic) {
    const bool poly_ok = sym.value.is_poly() && sym.value.poly().degree().value_or(-1) <= allowed;
    cert.symbolic = poly_ok;
    if (poly_ok) {
      double gap = 0.0;
      for (int k = 0; k < static_cast<int>(cert.projection.size()); ++k)
        gap = std::max(gap, std::abs(cert.projection[k] - sym.value.poly().coeff(k)));
      cert.details.emplace_back("numeric_vs_exact", gap);
    }
  }
  return cert;
}

}  // namespace

void InterpolationProblem::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("interpolation: p must lie in (1, inf)");
  if (derivatives.empty()) throw DomainError("interpolation: at least one value required");
  for (Complex c : derivatives)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw DomainError("interpolation: values must be finite");
  if (derivatives[0] == 0.0) throw DomainError("interpolation: c_0 must be nonzero");
}

Poly interpolation_power_poly(const InterpolationProblem& prob) {
  prob.validate();
  const double half = prob.p / 2.0;
  const Complex a0 = std::pow(prob.derivatives[0], half);
  const std::vector<Complex> d = beta_power_derivatives(prob.derivatives, half, a0);
  std::vector<Complex> c(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) c[j] = d[j] / factorial(static_cast<int>(j));
  return Poly(std::move(c));
}

SolutionReport solve_origin_interpolation(const InterpolationProblem& prob,
                                          const SolverOptions& opts) {
  const Poly f = interpolation_power_poly(prob);
  const double t = 2.0 / prob.p;
  const int N = static_cast<int>(prob.derivatives.size()) - 1;
  std::vector<std::string> warnings;

  bool near = false;
  for (const RootCluster& rc : cluster_roots(find_roots(f), kRootClusterTol)) {
    const double r = std::abs(rc.center);
    if (r < kInDisc) {
      if (!near_integer(t * rc.multiplicity))
        throw NotApplicable("interpolation: f has a zero of order " +
                            std::to_string(rc.multiplicity) + " at " + fmt(rc.center) +
                            " in the disc, not a multiple of the exponent denominator");
    } else if (r <= kOnBoundary) {
      warnings.push_back("boundary-ambiguous zero of f at " + fmt(rc.center));
    }
    if (r < kNearBoundary) near = true;
  }
  if (prob.p < 2.0 && near)
    warnings.push_back("p < 2: integrability of f^(1-2/p) not checked (zeros on or near the circle)");

  SolutionReport rep{PowerRep(RationalRep(f), t, prob.derivatives[0]), 0.0, {}, std::move(warnings)};
  rep.norm = ap_norm(rep.F, prob.p, opts.rule);
  rep.certificate = degree_certificate(rep.F, prob.p, N, opts);
  if (!rep.certificate.passed())
    throw CertificateFailed("interpolation: offending projection mass " +
                            std::to_string(rep.certificate.max_offending));
  return rep;
}

ZnbSolution solve_linear_extremal_zNb(double p, int N, Complex b, const SolverOptions& opts) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("extremal-znb: p must lie in (1, inf)");
  if (N < 1) throw DomainError("extremal-znb: N must be >= 1");
  const double nb = std::abs(b);
  const double slack = 1.0 - 2.0 / p;
  const double bound = 1.0 + slack / (N + 1);
  if (!(nb >= bound))
    throw HypothesisFailed("extremal-znb: |b| = " + std::to_string(nb) + " is below the bound " +
                           std::to_string(bound));

  const Complex sgn_b = b / nb;
  const Complex a = sgn_b * (nb + std::sqrt(nb * nb - 4.0 * slack / (N + 1))) / 2.0;
  if (std::abs(a) < 1.0 - 1e-12) throw Error("extremal-znb: |a| < 1 despite the hypothesis");

  const double n = std::norm(a) + 1.0 / (N + 1);
  const Complex root_a = std::pow(a, slack);
  const Complex s = std::abs(root_a) > 0.0 ? root_a / std::abs(root_a) : Complex(1.0);
  const RationalRep base((Poly::monomial(N) + Poly::constant(a)) * (1.0 / std::sqrt(n)));
  const Complex anchor = s * std::pow(a, 2.0 / p) / std::pow(n, 1.0 / p);

  ZnbSolution out{{PowerRep(base, 2.0 / p, anchor), 0.0, {}, {}}, a};
  SolutionReport& rep = out.report;
  rep.norm = ap_norm(rep.F, p, opts.rule);

  Certificate& cert = rep.certificate;
  cert.kind = "kernel_multiple";
  cert.allowed_degree = N;
  cert.tolerance = opts.cert_tol;
  cert.projection = signed_power_projection(rep.F, p, N + opts.extra_degree, opts.rule);
  double outside = 0.0;
  for (int k = 1; k < static_cast<int>(cert.projection.size()); ++k)
    if (k != N) outside = std::max(outside, std::abs(cert.projection[k]));
  const Complex lead = cert.projection[N];
  const double ratio = std::abs(cert.projection[0] / lead - b);
  cert.details.emplace_back("outside_support", outside);
  cert.details.emplace_back("ratio_defect", ratio);
  cert.details.emplace_back("multiple_re", lead.real());
  cert.details.emplace_back("multiple_im", lead.imag());
  cert.max_offending = std::max({outside, std::abs(cert.projection[0] - b * lead), std::abs(lead.imag())});
  if (!(lead.real() > 0.0)) cert.max_offending = std::max(cert.max_offending, std::abs(lead));
  if (!cert.passed())
    throw CertificateFailed("extremal-znb: offending projection mass " +
                            std::to_string(cert.max_offending));
  return out;
}

A4Forward a4_forward(Complex a, Complex b, Complex c) {
  const Complex ab = std::conj(a);
  const double a2 = std::norm(a);
  const double u = a2 - 1.0;
  A4Forward f;
  f.v1 = (a * b / 2.0 + a2 - 1.0) / a;
  f.v2 = (a2 * b + 2.0 * a * ab * ab + a * c - 2.0 * ab - b - a * b * b / 4.0) / a;
  f.residue_condition = u * (2.0 * c + ab * b) - 2.0 * (ab * ab + c + ab * b);
  return f;
}

Complex a4_residue_free_c(Complex a, Complex b) {
  const Complex ab = std::conj(a);
  const double u = std::norm(a) - 1.0;
  return (2.0 * ab * ab + 2.0 * ab * b - u * ab * b) / (2.0 * u - 2.0);
}

PowerRep a4_function(Complex a, Complex b, Complex c) {
  if (!(std::abs(a) > 0.0 && std::abs(a) < 1.0)) throw DomainError("a4: need 0 < |a| < 1");
  // F^2 = (a - z)^2 (1 + b z + c z^2) / (a^2 (1 - conj(a) z)^2)
  const RationalRep num(Poly({a * a, -2.0 * a, 1.0}) * Poly({1.0, b, c}) * (1.0 / (a * a)));
  const RationalRep base = mul(num, RationalRep::pole(a, 2));
  return PowerRep(base, 0.5, 1.0);
}

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;

struct Unknowns {
  Complex a, b, c;
};

Unknowns unpack(const Vec6& x) {
  return {{x[0], x[1]}, {x[2], x[3]}, {x[4], x[5]}};
}

Vec6 pack(const Unknowns& u) {
  Vec6 x;
  x << u.a.real(), u.a.imag(), u.b.real(), u.b.imag(), u.c.real(), u.c.imag();
  return x;
}

// residual of the three complex equations; NaN outside 0 < |a| < 1
Vec6 system_residual(const Vec6& x, Complex v1, Complex v2) {
  const Unknowns u = unpack(x);
  const double ra = std::abs(u.a);
  if (!(ra > 1e-3 && ra < 1.0 - 1e-9)) return Vec6::Constant(std::nan(""));
  const A4Forward f = a4_forward(u.a, u.b, u.c);
  const Complex e1 = f.v1 - v1, e2 = f.v2 - v2;
  const Complex e3 = f.residue_condition / (std::norm(u.a) - 1.0);
  Vec6 r;
  r << e1.real(), e1.imag(), e2.real(), e2.imag(), e3.real(), e3.imag();
  return r;
}

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

Unknowns start_point(int k) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const int i = k + 1;
  const double r = std::sqrt(0.05 * 0.05 + halton(i, 2) * (0.95 * 0.95 - 0.05 * 0.05));
  const Complex a = std::polar(r, two_pi * halton(i, 3));
  const Complex b = std::polar(2.0 * std::sqrt(halton(i, 5)), two_pi * halton(i, 7));
  const Complex c = std::polar(2.0 * std::sqrt(halton(i, 11)), two_pi * halton(i, 13));
  return {a, b, c};
}

struct NewtonResult {
  Vec6 x;
  double residual;
  bool converged;
};

NewtonResult damped_newton(Vec6 x, Complex v1, Complex v2, const A4Options& o) {
  const double tol = 1e-12 * std::max({1.0, std::abs(v1), std::abs(v2)});
  Vec6 r = system_residual(x, v1, v2);
  double nr = r.norm();
  for (int it = 0; it < o.max_iters && std::isfinite(nr); ++it) {
    if (nr < tol) return {x, nr, true};
    Eigen::Matrix<double, 6, 6> J;
    bool ok = true;
    for (int j = 0; j < 6 && ok; ++j) {
      const double h = o.fd_step * std::max(1.0, std::abs(x[j]));
      Vec6 xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const Vec6 rp = system_residual(xp, v1, v2), rm = system_residual(xm, v1, v2);
      if (!rp.allFinite() || !rm.allFinite()) ok = false;
      J.col(j) = (rp - rm) / (2.0 * h);
    }
    if (!ok) break;
    const Vec6 dx = J.fullPivLu().solve(-r);
    if (!dx.allFinite()) break;
    double lambda = 1.0;
    bool moved = false;
    while (lambda > 1e-10) {
      const Vec6 xn = x + lambda * dx;
      const Vec6 rn = system_residual(xn, v1, v2);
      const double nn = rn.norm();
      if (std::isfinite(nn) && nn < (1.0 - 1e-4 * lambda) * nr) {
        x = xn;
        r = rn;
        nr = nn;
        moved = true;
        break;
      }
      lambda /= 2.0;
    }
    if (!moved) break;
  }
  return {x, nr, std::isfinite(nr) && nr < tol};
}

// 1 + b z + c z^2 has no zero in the open disc, or a repeated zero
bool zero_location_ok(Complex b, Complex c) {
  const std::vector<Complex> roots = find_roots(Poly({1.0, b, c}));
  if (roots.size() == 2 && std::abs(roots[0] - roots[1]) < 1e-6 * std::max(1.0, std::abs(roots[0])))
    return true;
  for (Complex r : roots)
    if (std::abs(r) < kInDisc) return false;
  return true;
}

}  // namespace

A4Solution solve_a4_one_zero(Complex v1, Complex v2, const SolverOptions& opts,
                             const A4Options& newton) {
  for (Complex v : {v1, v2})
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("a4-onezero: targets must be finite");

  std::vector<A4Candidate> converged;
  int invalid = 0;
  for (int k = 0; k < newton.starts; ++k) {
    const NewtonResult nr = damped_newton(pack(start_point(k)), v1, v2, newton);
    if (!nr.converged) continue;
    const Unknowns u = unpack(nr.x);
    if (!zero_location_ok(u.b, u.c)) {
      ++invalid;
      continue;
    }
    bool dup = false;
    for (const A4Candidate& c : converged)
      dup = dup || (std::abs(c.a - u.a) < 1e-7 && std::abs(c.b - u.b) < 1e-7 &&
                    std::abs(c.c - u.c) < 1e-7);
    if (!dup) converged.push_back({u.a, u.b, u.c, nr.residual});
  }
  if (converged.empty()) {
    if (invalid > 0)
      throw InvalidSolution("a4-onezero: every converged root puts a zero of 1 + bz + cz^2 in the disc");
    throw NoConvergence("a4-onezero: no start converged");
  }

  std::vector<SolutionReport> reports;
  for (A4Candidate& c : converged) {
    SolutionReport rep{a4_function(c.a, c.b, c.c), 0.0, {}, {}};
    rep.norm = ap_norm(rep.F, 4.0, opts.rule);
    rep.certificate = degree_certificate(rep.F, 4.0, 2, opts);
    c.norm = rep.norm;
    c.certified = rep.certificate.passed();
    reports.push_back(std::move(rep));
  }
  std::vector<std::size_t> order(converged.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const A4Candidate &x = converged[i], &y = converged[j];
    if (x.certified != y.certified) return x.certified;
    if (std::abs(x.norm - y.norm) > 1e-9) return x.norm < y.norm;
    if (x.residual != y.residual) return x.residual < y.residual;
    return std::abs(x.a) < std::abs(y.a);
  });
  const std::size_t best = order.front();
  if (!converged[best].certified)
    throw CertificateFailed("a4-onezero: no converged root passes the certificate");

  A4Solution out{std::move(reports[best]), converged[best].a, converged[best].b, converged[best].c,
                 converged[best].residual, {}};
  for (std::size_t i = 1; i < order.size(); ++i) out.alternates.push_back(converged[order[i]]);
  if (!out.alternates.empty())
    out.report.warnings.push_back(std::to_string(out.alternates.size()) +
                                  " alternate root(s) of the system found");
  return out;
}

std::vector<Poly> annihilated_polys(const std::vector<FunctionalSpec>& specs, int degree) {
  const int n = degree + 1;
  if (specs.empty()) {
    std::vector<Poly> basis;
    for (int k = 0; k < n; ++k) basis.push_back(Poly::monomial(k));
    return basis;
  }
  Eigen::MatrixXcd A(specs.size(), n);
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (int k = 0; k < n; ++k) A(i, k) = specs[i].apply(Poly::monomial(k));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-12 * (sv.size() ? sv[0] : 1.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  std::vector<Poly> basis;
  const Eigen::MatrixXcd& V = svd.matrixV();
  for (int j = rank; j < n; ++j) {
    std::vector<Complex> c(n);
    for (int k = 0; k < n; ++k) c[k] = V(k, j);
    basis.emplace_back(std::move(c));
  }
  return basis;
}

double check_extremality(const Evaluable& F, double p, const std::vector<FunctionalSpec>& allowed,
                         const DiscRule& rule, int degree) {
  // moments mu_k = int z^k conj(|F|^{p-1} sgn F) dsigma
  auto u = [&F, p](Complex z) { return signed_power(F(z), p); };
  const std::vector<Complex> proj = numeric_projection_coeffs(u, degree, rule);
  double worst = 0.0;
  for (const Poly& h : annihilated_polys(allowed, degree)) {
    Complex v = 0.0;
    for (int k = 0; k < static_cast<int>(h.coeffs().size()); ++k)
      v += h.coeffs()[k] * std::conj(proj[k]) / static_cast<double>(k + 1);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace bergman
