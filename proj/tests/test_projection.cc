#include <random>

#include "bergman/errors.hpp"
#include "bergman/projection.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bergman;

namespace {
const DiscRule& default_rule() {
  static const DiscRule rule = make_rule();
  return rule;
}

Poly random_poly(std::mt19937_64& rng, int deg) {
  std::vector<Complex> c(deg + 1);
  for (auto& x : c) x = oracle::random_complex(rng);
  return Poly(c);
}
}  // namespace

TEST_CASE("kernel_of examples") {
  const RationalRep k0 = kernel_of(FunctionalSpec::derivative(0.0, 2));
  CHECK(k0.is_poly());
  CHECK(std::abs(k0.poly().coeff(2) - 6.0) < 1e-15);

  const Complex a(0.4, -0.3);
  const RationalRep k1 = kernel_of(FunctionalSpec::derivative(a, 0));
  REQUIRE(k1.terms().size() == 1);
  CHECK(k1.terms()[0].order == 2);
  CHECK(std::abs(k1.terms()[0].coef - 1.0) < 1e-15);

  const RationalRep k2 = kernel_of(FunctionalSpec::averaged(a));
  REQUIRE(k2.terms().size() == 1);
  CHECK(k2.terms()[0].order == 1);

  CHECK_THROWS_AS(kernel_of(FunctionalSpec::averaged(0.0)), DomainError);
  CHECK_THROWS_AS(kernel_of(FunctionalSpec::derivative(1.2, 0)), DomainError);
}

TEST_CASE("reproducing property of derivative-evaluation kernels") {
  const DiscRule& rule = default_rule();
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> order(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly f = random_poly(rng, 10);
    const Complex a = trial == 0 ? Complex(0.0) : oracle::random_in_disc(rng, 0.05, 0.8);
    const int n = order(rng);
    const Complex coef = oracle::random_complex(rng);
    const FunctionalSpec spec = FunctionalSpec::derivative(a, n, coef);
    const RationalRep k = kernel_of(spec);
    const Complex lhs = pairing(f, k, rule);
    CHECK(std::abs(lhs - spec.apply(f)) <= 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("averaged-integral kernel moments") {
  const DiscRule& rule = default_rule();
  const Complex a(0.35, 0.5);
  const RationalRep k = kernel_of(FunctionalSpec::averaged(a));
  for (int m = 0; m <= 10; ++m) {
    const Complex v = pairing([m](Complex z) { return std::pow(z, m); }, k, rule);
    CHECK(std::abs(v - std::pow(a, m) / static_cast<double>(m + 1)) < 1e-12);
  }
}

TEST_CASE("project_monomial") {
  const Poly p21 = project_monomial(2, 1);
  CHECK(p21.degree() == 1);
  CHECK(std::abs(p21.coeff(1) - 2.0 / 3.0) < 1e-16);
  CHECK(project_monomial(1, 2).is_zero());
  CHECK(std::abs(project_monomial(5, 0).coeff(5) - 1.0) < 1e-16);
}

TEST_CASE("project_poly_conj") {
  const DiscRule& rule = default_rule();
  const Poly z3 = project_poly_conj(Poly::monomial(3), TruncatedSeries({1.0, 0.0, 0.0, 0.0}));
  CHECK(std::abs(z3.coeff(3) - 1.0) < 1e-16);
  const Poly h = project_poly_conj(Poly::monomial(1), TruncatedSeries({0.0, 1.0}));
  CHECK(std::abs(h.coeff(0) - 0.5) < 1e-16);
  CHECK(h.degree() == 0);

  const Poly r = project_poly_conj(Poly::monomial(2), TruncatedSeries({1.0, 2.0, 0.0}));
  CHECK(std::abs(r.coeff(1) - 4.0 / 3.0) < 1e-15);
  CHECK(std::abs(r.coeff(2) - 1.0) < 1e-15);
  const Poly num = numeric_projection(
      [](Complex z) { return z * z * std::conj(1.0 + 2.0 * z); }, 4, rule);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(num.coeff(k) - r.coeff(k)) < 1e-10);

  CHECK_THROWS_AS(project_poly_conj(Poly::monomial(3), TruncatedSeries({1.0, 2.0})), InsufficientData);

  // random cross-check with an analytic non-polynomial g
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const Poly f = random_poly(rng, 6);
    const RationalRep g(Poly({1.0, 0.5}), {PoleTerm{oracle::random_in_disc(rng, 0.1, 0.6), 2, 0.4}});
    const Poly sym = project_poly_conj(f, taylor_at_origin(g, 6));
    CHECK(sym.degree().value_or(-1) <= 6);
    const auto numc = numeric_projection_coeffs([&](Complex z) { return f(z) * std::conj(g(z)); }, 9, rule);
    for (int k = 0; k <= 9; ++k) CHECK(std::abs(numc[k] - sym.coeff(k)) < 1e-8);
  }
}

TEST_CASE("project_kernel_conj") {
  const DiscRule& rule = default_rule();
  const Complex a(0.3, 0.45);

  // N = 0: kernel of f -> w f(a)
  const Complex w(0.7, -1.1);
  auto const_g = [&](Complex, int n) {
    std::vector<Complex> c(n + 1, 0.0);
    c[0] = w;
    return TruncatedSeries(c);
  };
  const RationalRep r0 = project_kernel_conj(RationalRep::pole(a, 2), const_g);
  REQUIRE(r0.terms().size() == 1);
  CHECK(r0.terms()[0].order == 2);
  CHECK(std::abs(r0.terms()[0].coef - std::conj(w)) < 1e-14);

  // g vanishing to order > N at a annihilates the kernel
  const RationalRep g3(Poly({-a, 1.0}));
  const RationalRep gcube = power(g3, 3);
  auto taylor3 = [&](Complex pt, int n) { return taylor_at(gcube, pt, n); };
  const RationalRep k2 = RationalRep::pole(a, 4);
  const RationalRep z0 = project_kernel_conj(k2, taylor3);
  CHECK(z0.terms().empty());

  // 1/(1 - conj(a) z)^3 against (z - a) h(z): a single order-2 term
  const RationalRep h(Poly({2.0, Complex(0.5, 0.5)}), {PoleTerm{Complex(-0.2, 0.1), 2, 0.3}});
  const RationalRep g = mul(RationalRep(Poly({-a, 1.0})), h);
  auto tg = [&](Complex pt, int n) {
    TruncatedSeries s = taylor_at(g, pt, n);
    if (pt == a) {
      auto c = s.coeffs();
      c[0] = 0.0;  // exact zero at a
      return TruncatedSeries(c);
    }
    return s;
  };
  const RationalRep k3 = RationalRep::pole(a, 3);
  const RationalRep out = project_kernel_conj(k3, tg);
  CHECK(out.max_order_at(a) <= 2);
  const auto numc = numeric_projection_coeffs([&](Complex z) { return k3(z) * std::conj(g(z)); }, 20, rule);
  const auto sym = taylor_at_origin(out, 20);
  for (int k = 0; k <= 20; ++k) CHECK(std::abs(numc[k] - sym[k]) < 1e-8);

  CHECK_THROWS_AS(project_kernel_conj(RationalRep::pole(a, 1), const_g), DomainError);
}

TEST_CASE("project_kernel_conj: randomized symbolic vs numeric") {
  const DiscRule& rule = default_rule();
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<FunctionalSpec> specs;
    for (int i = 0; i < 3; ++i)
      specs.push_back(FunctionalSpec::derivative(
          i == 0 ? Complex(0.0) : oracle::random_in_disc(rng, 0.1, 0.6), i + trial % 2,
          oracle::random_complex(rng)));
    const RationalRep k = kernel_of(specs);
    const RationalRep g(random_poly(rng, 3), {PoleTerm{oracle::random_in_disc(rng, 0.1, 0.5), 2, 0.5}});
    const RationalRep out =
        project_kernel_conj(k, [&](Complex pt, int n) { return taylor_at(g, pt, n); });
    const auto numc = numeric_projection_coeffs([&](Complex z) { return k(z) * std::conj(g(z)); }, 24, rule);
    const auto sym = taylor_at_origin(out, 24);
    for (int j = 0; j <= 24; ++j) CHECK(std::abs(numc[j] - sym[j]) < 1e-8 * std::max(1.0, std::abs(sym[j])));
  }
}

TEST_CASE("project_signed_power") {
  const DiscRule& rule = default_rule();
  // p = 2: the projection fixes F
  const PowerRep F2 = PowerRep::principal(RationalRep(Poly({1.0, 0.5, 0.25})), 1.0);
  const ProjectionResult r2 = project_signed_power(F2, 2.0, rule, 6);
  CHECK(r2.symbolic);
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(r2.value.poly().coeff(k) - F2.base().poly().coeff(k)) < 1e-14);

  // p = 4, F = (1 + z)^{1/2}: polynomial of degree at most 1
  const PowerRep F4(RationalRep(Poly({1.0, 1.0})), 0.5, 1.0);
  const ProjectionResult r4 = project_signed_power(F4, 4.0, rule, 8);
  CHECK(r4.symbolic);
  CHECK(r4.value.is_poly());
  CHECK(r4.value.poly().degree().value_or(-1) <= 1);
  const auto numc = numeric_projection_coeffs([&](Complex z) { return signed_power(F4(z), 4.0); }, 8, rule);
  for (int k = 0; k <= 8; ++k) CHECK(std::abs(numc[k] - r4.value.poly().coeff(k)) < 1e-6);

  // z^N + b extremal: positive multiple of z^N + b
  const int n = 2;
  const double p = 4.0;
  const Complex b(2.0, 0.0);
  const double nb = std::abs(b);
  const Complex a = (nb + std::sqrt(nb * nb - (4.0 / (n + 1)) * (1 - 2 / p))) / 2 * (b / nb);
  const PowerRep F = PowerRep::principal(RationalRep(Poly::monomial(n) + Poly::constant(a)), 2 / p);
  const ProjectionResult r = project_signed_power(F, p, rule, 8);
  const Poly& q = r.value.poly();
  CHECK(r.value.is_poly());
  CHECK(q.degree() == n);
  CHECK(std::abs(q.coeff(1)) < 1e-12);
  CHECK(std::abs(q.coeff(0) / q.coeff(n) - b) < 1e-12);
  CHECK(q.coeff(n).real() > 0.0);

  // non-even p goes through the numeric path
  const ProjectionResult r3 = project_signed_power(F4, 3.0, rule, 8);
  CHECK_FALSE(r3.symbolic);
}

TEST_CASE("a2_inner is exact") {
  const DiscRule& rule = default_rule();
  const RationalRep k = RationalRep::pole(0.5, 2);
  CHECK(std::abs(a2_inner(k, k) - 16.0 / 9.0) < 1e-14);
  CHECK(std::abs(a2_inner(RationalRep(Poly::constant(1.0)), k) - 1.0) < 1e-15);

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex a = oracle::random_in_disc(rng, 0.1, 0.7), b = oracle::random_in_disc(rng, 0.1, 0.7);
    const RationalRep f(random_poly(rng, 3), {PoleTerm{a, 2, oracle::random_complex(rng)},
                                              PoleTerm{b, 4, oracle::random_complex(rng)}});
    const RationalRep g(random_poly(rng, 2), {PoleTerm{b, 3, oracle::random_complex(rng)},
                                              PoleTerm{a, 2, oracle::random_complex(rng)}});
    const Complex exact = a2_inner(f, g);
    CHECK(std::abs(exact - pairing(f, g, rule)) < 1e-11 * std::max(1.0, std::abs(exact)));
  }
  CHECK_THROWS_AS(a2_inner(k, RationalRep::pole(0.5, 1)), DomainError);
}
