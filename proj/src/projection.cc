#include "bergman/projection.hpp"

#include <algorithm>
#include <cmath>

#include "bergman/errors.hpp"

namespace bergman {

void FunctionalSpec::validate() const {
  if (!(std::abs(point) < 1.0)) throw DomainError("functional point must lie in the open disc");
  if (order < 0) throw DomainError("functional order must be >= 0");
  if (kind == Kind::averaged_integral && point == 0.0)
    throw DomainError("averaged_integral functional needs a nonzero point");
}

Complex FunctionalSpec::apply(const Poly& f) const {
  if (kind == Kind::derivative_eval) return coefficient * f.derivative(order)(point);
  Complex acc = 0.0, pw = 1.0;
  for (std::size_t m = 0; m < f.coeffs().size(); ++m) {
    acc += f.coeffs()[m] * pw / static_cast<double>(m + 1);
    pw *= point;
  }
  return coefficient * acc;
}

namespace {

// Kernel of f -> f^{(n)}(a) with unit coefficient, in the pole basis.
RationalRep derivative_kernel(Complex a, int n) {
  const double scale = factorial(n + 1);
  if (a == 0.0) return RationalRep(Poly::monomial(n, scale));
  std::vector<PoleTerm> terms;
  for (const auto& [j, b] : partial_fractions_shifted_monomial(n, a))
    terms.push_back(PoleTerm{a, j, scale * b});
  return RationalRep(Poly(), std::move(terms));
}

}  // namespace

RationalRep kernel_of(const FunctionalSpec& spec) {
  spec.validate();
  const Complex c = std::conj(spec.coefficient);
  if (spec.kind == FunctionalSpec::Kind::averaged_integral)
    return RationalRep::pole(spec.point, 1, c);
  return derivative_kernel(spec.point, spec.order) * c;
}

RationalRep kernel_of(const std::vector<FunctionalSpec>& specs) {
  RationalRep k;
  for (const FunctionalSpec& s : specs) k += kernel_of(s);
  return k;
}

Poly project_monomial(int m, int n) {
  if (m < 0 || n < 0) throw DomainError("project_monomial: m, n must be >= 0");
  if (m < n) return Poly();
  return Poly::monomial(m - n, static_cast<double>(m - n + 1) / (m + 1));
}

Poly project_poly_conj(const Poly& f, const TruncatedSeries& g_taylor) {
  const int deg = f.degree().value_or(-1);
  if (deg < 0) return Poly();
  if (static_cast<int>(g_taylor.size()) < deg + 1)
    throw InsufficientData("project_poly_conj: need deg(f) + 1 Taylor coefficients of g");
  std::vector<Complex> out(deg + 1, Complex(0.0));
  for (int n = 0; n <= deg; ++n) {
    const Complex fn = f.coeff(n);
    if (fn == 0.0) continue;
    for (int j = 0; j <= n; ++j)
      out[j] += fn * std::conj(g_taylor[n - j]) * (static_cast<double>(j + 1) / (n + 1));
  }
  return Poly(std::move(out));
}

std::vector<Complex> derivative_kernel_weights(const RationalRep& k, Complex a) {
  const int top = k.max_order_at(a);
  if (top == 0) return {};
  std::vector<Complex> resid(top + 1, Complex(0.0));
  for (const PoleTerm& t : k.terms()) {
    if (!same_point(t.a, a)) continue;
    if (t.order == 1)
      throw DomainError("order-1 pole terms are not kernels of derivative evaluations");
    resid[t.order] += t.coef;
  }
  const int nmax = top - 2;
  std::vector<std::map<int, Complex>> pf(nmax + 1);
  for (int n = 0; n <= nmax; ++n) pf[n] = partial_fractions_shifted_monomial(n, a);
  // back substitution from the highest order down
  std::vector<Complex> e(nmax + 1, Complex(0.0));
  for (int n = nmax; n >= 0; --n) {
    const double fact = factorial(n + 1);
    e[n] = resid[n + 2] / (fact * pf[n].at(n + 2));
    for (const auto& [j, b] : pf[n]) resid[j] -= e[n] * fact * b;
  }
  return e;
}

Complex a2_inner(const RationalRep& f, const RationalRep& g) {
  Complex acc = 0.0;
  if (!g.poly().is_zero()) {
    const int deg = *g.poly().degree();
    const TruncatedSeries tf = taylor_at_origin(f, deg);
    for (int k = 0; k <= deg; ++k) acc += tf[k] * std::conj(g.poly().coeff(k)) / static_cast<double>(k + 1);
  }
  for (Complex a : g.base_points()) {
    const std::vector<Complex> e = derivative_kernel_weights(g, a);
    const TruncatedSeries tf = taylor_at(f, a, static_cast<int>(e.size()) - 1);
    for (std::size_t n = 0; n < e.size(); ++n)
      acc += std::conj(e[n]) * factorial(static_cast<int>(n)) * tf[n];
  }
  return acc;
}

RationalRep project_kernel_conj(const RationalRep& k, const TaylorProvider& g_taylor) {
  RationalRep out;
  if (!k.poly().is_zero()) {
    const int deg = *k.poly().degree();
    out += project_poly_conj(k.poly(), g_taylor(0.0, deg));
  }

  for (Complex a : k.base_points()) {
    const int top = k.max_order_at(a);
    const std::vector<Complex> e = derivative_kernel_weights(k, a);
    const int nmax = top - 2;
    std::vector<std::map<int, Complex>> pf(nmax + 1);
    for (int n = 0; n <= nmax; ++n) pf[n] = partial_fractions_shifted_monomial(n, a);

    // Leibniz rule: (f g)^{(n)}(a) = sum_i C(n, i) f^{(i)}(a) g^{(n-i)}(a)
    const TruncatedSeries tg = g_taylor(a, nmax);
    if (static_cast<int>(tg.size()) < nmax + 1)
      throw InsufficientData("project_kernel_conj: Taylor data of g too short");
    int zero_order = 0;
    while (zero_order < static_cast<int>(tg.size()) && tg[zero_order] == 0.0) ++zero_order;

    std::vector<PoleTerm> terms;
    for (int i = 0; i + zero_order <= nmax; ++i) {
      Complex ei = 0.0;
      for (int n = i + zero_order; n <= nmax; ++n)
        ei += e[n] * binomial(n, i) * std::conj(factorial(n - i) * tg[n - i]);
      const double fact = factorial(i + 1);
      for (const auto& [j, b] : pf[i]) terms.push_back(PoleTerm{a, j, ei * fact * b});
    }
    const RationalRep part(Poly(), std::move(terms));
    // orders drop by the order of vanishing of g at a
    if (part.max_order_at(a) > top - zero_order)
      throw Error("project_kernel_conj: pole order bound violated");
    out += part;
  }
  return out;
}

std::optional<RationalRep> rational_half_power(const PowerRep& F, double p) {
  const double half = p / 2.0;
  if (!(p >= 2.0) || std::abs(half - std::round(half)) > 1e-12) return std::nullopt;
  const int m = static_cast<int>(std::lround(half));
  const double n_real = F.exponent() * m;
  if (std::abs(n_real - std::round(n_real)) > 1e-9 || n_real < -1e-9) return std::nullopt;
  const int n = static_cast<int>(std::lround(n_real));
  // F^m and base^n are both analytic; they differ by the ratio of leading coefficients
  const Complex c = std::pow(F.anchor(), m) / std::pow(F.base_leading_coefficient(), n);
  return power(F.base(), n) * c;
}

ProjectionResult project_signed_power(const PowerRep& F, double p, const DiscRule& rule,
                                      int degree) {
  if (auto h = rational_half_power(F, p)) {
    // drop order-1 terms at the level of rounding noise
    double scale = 0.0, order_one = 0.0;
    for (const PoleTerm& t : h->terms()) {
      scale = std::max(scale, std::abs(t.coef));
      if (t.order == 1) order_one = std::max(order_one, std::abs(t.coef));
    }
    for (Complex c : h->poly().coeffs()) scale = std::max(scale, std::abs(c));
    if (order_one <= 1e-9 * scale) {
      std::vector<PoleTerm> kept;
      for (const PoleTerm& t : h->terms())
        if (t.order != 1) kept.push_back(t);
      const RationalRep k(h->poly(), std::move(kept));
      const int m = static_cast<int>(std::lround(p / 2.0));
      const PowerRep g = F.pow(static_cast<double>(m - 1));
      auto provider = [&g](Complex pt, int n) { return g.taylor_at(pt, n); };
      return {project_kernel_conj(k, provider), true};
    }
  }
  auto u = [&F, p](Complex z) { return signed_power(F(z), p); };
  return {RationalRep(numeric_projection(u, degree, rule)), false};
}

}  // namespace bergman
