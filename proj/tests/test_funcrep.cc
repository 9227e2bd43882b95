#include <random>
#include <set>

#include "bergman/errors.hpp"
#include "bergman/funcrep.hpp"
#include "bergman/power.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bergman;

namespace {

RationalRep random_rational(std::mt19937_64& rng) {
  std::vector<Complex> pc(4);
  for (auto& c : pc) c = oracle::random_complex(rng);
  std::vector<PoleTerm> terms;
  for (int b = 0; b < 2; ++b) {
    const Complex a = oracle::random_in_disc(rng, 0.1, 0.7);
    for (int k = 1; k <= 3; ++k) terms.push_back(PoleTerm{a, k, oracle::random_complex(rng, 0.3)});
  }
  return RationalRep(Poly(pc), terms);
}

}  // namespace

TEST_CASE("eval examples") {
  CHECK(std::abs(eval(RationalRep::pole(0.5, 2), 0.5) - 16.0 / 9.0) < 1e-15);
  CHECK(std::abs(eval(RationalRep(Poly::monomial(2)), Complex(0, 1)) + 1.0) < 1e-15);
  const RationalRep f(Poly::constant(1.0), {PoleTerm{0.3, 1, 1.0}});
  CHECK(std::abs(eval(f, 0.0) - 2.0) < 1e-15);
}

TEST_CASE("Poly normalization") {
  CHECK_FALSE(Poly().degree().has_value());
  CHECK_FALSE(Poly({0.0, 1e-16}).degree().has_value());
  CHECK(Poly({1.0, 2.0, 0.0}).degree() == 1);
  CHECK((Poly({1.0, 1.0}) * Poly({1.0, -1.0})).coeffs().size() == 3);
}

TEST_CASE("RationalRep invariants") {
  CHECK_THROWS_AS(RationalRep::pole(0.0, 2), DomainError);
  CHECK_THROWS_AS(RationalRep::pole(1.0, 2), DomainError);
  CHECK_THROWS_AS(RationalRep::pole(0.5, 0), DomainError);
  const RationalRep f = RationalRep::pole(0.5, 2, 1.0) + RationalRep::pole(0.5, 2, -1.0);
  CHECK(f.terms().empty());
  const RationalRep g = RationalRep::pole(0.5, 2, 1.0) + RationalRep::pole(0.5, 2, 2.0);
  REQUIRE(g.terms().size() == 1);
  CHECK(std::abs(g.terms()[0].coef - 3.0) < 1e-15);
}

TEST_CASE("derivative examples") {
  const Complex a(0.3, 0.4);
  const RationalRep d = derivative(RationalRep::pole(a, 2), 1);
  REQUIRE(d.terms().size() == 1);
  CHECK(d.terms()[0].order == 3);
  CHECK(std::abs(d.terms()[0].coef - 2.0 * std::conj(a)) < 1e-15);

  const Poly z3 = derivative(RationalRep(Poly::monomial(3)), 1).poly();
  CHECK(std::abs(z3.coeff(2) - 3.0) < 1e-15);

  const Complex c(1.5, -0.5);
  const RationalRep d2 = derivative(RationalRep::pole(a, 1, c), 2);
  CHECK(d2.terms()[0].order == 3);
  CHECK(std::abs(d2.terms()[0].coef - 2.0 * std::conj(a) * std::conj(a) * c) < 1e-15);
}

TEST_CASE("derivative matches central finite differences") {
  std::mt19937_64 rng(1);
  const double h = 1e-5;
  for (int trial = 0; trial < 30; ++trial) {
    const RationalRep f = random_rational(rng);
    const RationalRep df = derivative(f, 1);
    const Complex z = oracle::random_in_disc(rng, 0.0, 0.95);
    const Complex fd = (f(z + h) - f(z - h)) / (2 * h);
    CHECK(std::abs(df(z) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("partial_fractions_shifted_monomial") {
  const Complex a(0.6, -0.2);
  const Complex ia = 1.0 / std::conj(a);
  auto b0 = partial_fractions_shifted_monomial(0, a);
  CHECK(b0.size() == 1);
  CHECK(std::abs(b0.at(2) - 1.0) < 1e-15);
  auto b1 = partial_fractions_shifted_monomial(1, a);
  CHECK(std::abs(b1.at(3) - ia) < 1e-15);
  CHECK(std::abs(b1.at(2) + ia) < 1e-15);
  auto b2 = partial_fractions_shifted_monomial(2, a);
  CHECK(std::abs(b2.at(4) - ia * ia) < 1e-14);
  CHECK(std::abs(b2.at(3) + 2.0 * ia * ia) < 1e-14);
  CHECK(std::abs(b2.at(2) - ia * ia) < 1e-14);
  CHECK_THROWS_AS(partial_fractions_shifted_monomial(2, 0.0), DomainError);

  std::mt19937_64 rng(3);
  // reconstruction is conditioned by |a|^{-n}; sample a moderately conditioned range
  for (int n = 0; n <= 5; ++n) {
    const Complex base = oracle::random_in_disc(rng, 0.5, 0.95);
    const auto b = partial_fractions_shifted_monomial(n, base);
    CHECK(b.count(0) == 0);
    CHECK(b.count(1) == 0);
    CHECK(std::abs(b.at(n + 2)) > 0.0);
    for (int k = 0; k < 20; ++k) {
      const Complex z = oracle::random_in_disc(rng, 0.0, 1.0);
      using W = std::complex<long double>;
      const W zw(z.real(), z.imag());
      const W w = 1.0L - W(base.real(), -base.imag()) * zw;
      W sum = 0.0L;
      for (const auto& [j, c] : b) sum += W(c.real(), c.imag()) / std::pow(w, j);
      const W direct = std::pow(zw, n) / std::pow(w, n + 2);
      CHECK(static_cast<double>(std::abs(sum - direct)) <=
            1e-12 * std::max(1.0, static_cast<double>(std::abs(direct))));
    }
  }
}

TEST_CASE("residue_at_pole") {
  CHECK(std::abs(residue_at_pole(RationalRep::pole(0.5, 1, 2.0), 0.5) + 4.0) < 1e-15);
  CHECK(std::abs(residue_at_pole(RationalRep::pole(0.5, 2, 2.0), 0.5)) == 0.0);
  const Complex a(0.0, 0.5);
  const RationalRep f = RationalRep::pole(a, 1, 3.0) + RationalRep::pole(a, 3, 5.0);
  CHECK(std::abs(residue_at_pole(f, a) - Complex(0, -6)) < 1e-14);
  CHECK_THROWS_AS(residue_at_pole(f, 0.3), DomainError);

  // contour oracle at radius 1e-3 around 1/conj(a)
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex b = oracle::random_in_disc(rng, 0.3, 0.8);
    RationalRep g(Poly({1.0, oracle::random_complex(rng)}),
                  {PoleTerm{b, 1, oracle::random_complex(rng)},
                   PoleTerm{b, 2, oracle::random_complex(rng, 0.1)}});
    const Complex num = contour_residue(g, 1.0 / std::conj(b), 1e-3, 256);
    CHECK(std::abs(num - residue_at_pole(g, b)) < 1e-8);
  }
}

TEST_CASE("taylor_at_origin") {
  const Complex a(0.3, 0.5);
  const Complex ac = std::conj(a);
  const auto t1 = taylor_at_origin(RationalRep::pole(a, 1), 2);
  CHECK(std::abs(t1[0] - 1.0) < 1e-15);
  CHECK(std::abs(t1[1] - ac) < 1e-15);
  CHECK(std::abs(t1[2] - ac * ac) < 1e-15);
  const auto t2 = taylor_at_origin(RationalRep::pole(a, 2), 1);
  CHECK(std::abs(t2[1] - 2.0 * ac) < 1e-15);
  const auto t3 = taylor_at_origin(RationalRep(Poly::monomial(3)), 2);
  for (int j = 0; j <= 2; ++j) CHECK(t3[j] == Complex(0.0));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalRep f = random_rational(rng);
    const auto ref = oracle::cauchy_taylor(f, 0.0, 6, 0.1, 64);
    const auto t = taylor_at_origin(f, 6);
    for (int j = 0; j <= 6; ++j) CHECK(std::abs(t[j] - ref[j]) <= 1e-8 * std::max(1.0, std::abs(ref[j])));
    const Complex z0 = oracle::random_in_disc(rng, 0.0, 0.5);
    const auto ref0 = oracle::cauchy_taylor(f, z0, 4, 0.05, 64);
    const auto t0 = taylor_at(f, z0, 4);
    for (int j = 0; j <= 4; ++j) CHECK(std::abs(t0[j] - ref0[j]) <= 1e-8 * std::max(1.0, std::abs(ref0[j])));
  }
}

TEST_CASE("mul") {
  const RationalRep p = mul(RationalRep(Poly({1.0, 1.0})), RationalRep(Poly({1.0, -1.0})));
  CHECK(p.is_poly());
  CHECK(std::abs(p.poly().coeff(2) + 1.0) < 1e-15);
  CHECK(std::abs(p.poly().coeff(1)) < 1e-15);

  const Complex a(0.2, -0.6);
  const RationalRep sq = mul(RationalRep::pole(a, 1), RationalRep::pole(a, 1));
  REQUIRE(sq.terms().size() == 1);
  CHECK(sq.terms()[0].order == 2);

  // Blaschke-type factor (a - z)/(1 - conj(a) z) squared
  const double b = 0.5;
  const RationalRep blaschke(Poly::constant(1.0 / b), {PoleTerm{b, 1, b - 1.0 / b}});
  const RationalRep bsq = mul(blaschke, blaschke);
  std::set<int> orders;
  for (const PoleTerm& t : bsq.terms()) orders.insert(t.order);
  CHECK(orders == std::set<int>{1, 2});

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalRep f = random_rational(rng);
    const RationalRep g = random_rational(rng);
    const RationalRep fg = mul(f, g);
    const RationalRep bb = mul(blaschke, blaschke);
    for (int k = 0; k < 10; ++k) {
      const Complex z = oracle::random_in_disc(rng, 0.0, 1.0);
      const Complex direct = f(z) * g(z);
      CHECK(std::abs(fg(z) - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
      const Complex bz = (b - z) / (1.0 - b * z);
      CHECK(std::abs(bb(z) - bz * bz) < 1e-12);
    }
  }
}

TEST_CASE("numerator_form reproduces the function") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalRep f = random_rational(rng);
    const NumeratorForm nf = numerator_form(f);
    for (int k = 0; k < 5; ++k) {
      const Complex z = oracle::random_in_disc(rng, 0.0, 1.0);
      Complex den = 1.0;
      for (const auto& [a, m] : nf.denominator) den *= std::pow(1.0 - std::conj(a) * z, m);
      CHECK(std::abs(nf.numerator(z) / den - f(z)) <= 1e-10 * std::max(1.0, std::abs(f(z))));
    }
  }
}

TEST_CASE("eval_power examples") {
  const PowerRep sq(RationalRep(Poly({1.0, 1.0})), 0.5, 1.0);
  CHECK(std::abs(eval_power(sq, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(eval_power(sq, 1.0) - std::sqrt(2.0)) < 1e-15);
  const PowerRep cube(RationalRep(Poly({2.0, 1.0})), 2.0, 4.0);
  CHECK(std::abs(eval_power(cube, 1.0) - 9.0) < 1e-13);
  CHECK_THROWS_AS(eval_power(sq, 1.1), DomainError);
  CHECK_THROWS_AS(PowerRep(RationalRep(Poly({1.0, 1.0})), 0.5, 2.0), DomainError);
}

TEST_CASE("eval_power: modulus invariant and continuation oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    // zero-free on the closed disc: 3 + small perturbation, plus a pole
    RationalRep base(Poly({Complex(3.0, 1.0), oracle::random_complex(rng, 0.5)}),
                     {PoleTerm{oracle::random_in_disc(rng, 0.2, 0.6), 2, oracle::random_complex(rng, 0.3)}});
    const double t = 0.37 + trial * 0.41;
    const PowerRep F = PowerRep::principal(base, t);
    const Complex z = oracle::random_in_disc(rng, 0.0, 1.0);
    CHECK(std::abs(std::pow(std::abs(F(z)), 1.0 / t) - std::abs(base(z))) <=
          1e-10 * std::abs(base(z)));
    // unwrap the argument along the segment with fine steps
    double arg = std::arg(base(0.0));
    Complex prev = base(0.0);
    for (int s = 1; s <= 4000; ++s) {
      const Complex cur = base(z * (s / 4000.0));
      arg += std::arg(cur / prev);
      prev = cur;
    }
    const Complex expected = F.anchor() * std::exp(t * Complex(std::log(std::abs(base(z)) / std::abs(base(0.0))), arg - std::arg(base(0.0))));
    CHECK(std::abs(F(z) - expected) <= 1e-10 * std::abs(expected));
  }
}

TEST_CASE("eval_power: zeros inside the disc") {
  // ((z - 1/2)^2)^{1/2} = z - 1/2 with anchor -1/2, including beyond the zero
  const RationalRep dbl(Poly({0.25, -1.0, 1.0}));
  const PowerRep F(dbl, 0.5, -0.5);
  REQUIRE(F.disc_zeros().size() == 1);
  CHECK(F.disc_zeros()[0].multiplicity == 2);
  for (Complex z : {Complex(0.9), Complex(0.2, 0.3), Complex(-0.7, 0.1), Complex(0.5)})
    CHECK(std::abs(F(z) - (z - 0.5)) < 1e-12);

  // simple zero with exponent 1/2 is a branch point
  const PowerRep G(RationalRep(Poly({-0.5, 1.0})), 0.5, std::sqrt(Complex(-0.5)));
  CHECK_THROWS_AS(G(0.8), BranchError);
  CHECK_NOTHROW(G(Complex(0.0, 0.8)));

  // zero at the origin: (z^2 (1+z))^{1/2} = z (1+z)^{1/2}
  const RationalRep b0(Poly({0.0, 0.0, 1.0, 1.0}));
  const PowerRep H(b0, 0.5, 1.0);
  CHECK(H.origin_order() == 2);
  for (Complex z : {Complex(0.3, 0.2), Complex(-0.9, 0.0), Complex(0.0, -0.6)})
    CHECK(std::abs(H(z) - z * std::sqrt(1.0 + z)) < 1e-12);
  CHECK_THROWS_AS(PowerRep(RationalRep(Poly({0.0, 1.0, 1.0})), 0.5, 1.0), DomainError);
}

TEST_CASE("PowerRep::taylor_at against the Cauchy oracle") {
  const Complex a(0.3, -0.2);
  RationalRep base = mul(RationalRep(Poly({-a, 1.0})), RationalRep(Poly({-a, 1.0})));
  base = mul(base, RationalRep(Poly({2.0, Complex(0.3, 0.4)}), {PoleTerm{Complex(0.1, 0.5), 2, 0.7}}));
  const PowerRep F = PowerRep::principal(base, 0.5);
  REQUIRE(F.disc_zeros().size() == 1);
  auto f = [&](Complex z) { return F(z); };
  for (Complex z0 : {Complex(0.0), Complex(-0.4, 0.1), a}) {
    const auto ref = oracle::cauchy_taylor(f, z0, 4, 0.05, 128);
    const auto t = F.taylor_at(z0, 4);
    for (int j = 0; j <= 4; ++j) CHECK(std::abs(t[j] - ref[j]) <= 1e-8 * std::max(1.0, std::abs(ref[j])));
  }
  const auto at_zero = F.taylor_at(a, 3);
  CHECK(at_zero[0] == Complex(0.0));
}

TEST_CASE("PowerRep pow and scaled") {
  const RationalRep base(Poly({Complex(1.0, 0.5), 0.4}));
  const PowerRep F = PowerRep::principal(base, 0.5);
  const PowerRep F2 = F.pow(2.0);
  const PowerRep G = F.scaled(Complex(0.0, 2.0));
  for (Complex z : {Complex(0.2, 0.3), Complex(-0.9, 0.1)}) {
    CHECK(std::abs(F2(z) - F(z) * F(z)) < 1e-13);
    CHECK(std::abs(G(z) - Complex(0.0, 2.0) * F(z)) < 1e-13);
  }
}

TEST_CASE("PowerRep::with_zeros keeps high-order zeros intact") {
  const Complex zeta(0.2, 0.3);
  const RationalRep lin(Poly({-zeta, 1.0}));
  const RationalRep base = mul(power(lin, 4), RationalRep(Poly({1.0, 0.5})));
  const Complex anchor = std::pow(std::pow(zeta, 4), 0.25);
  const PowerRep F = PowerRep::with_zeros(base, 0.25, anchor, {{zeta, 4}});
  REQUIRE(F.disc_zeros().size() == 1);
  CHECK(F.disc_zeros()[0].multiplicity == 4);
  // F = c (z - zeta) (1 + z/2)^{1/4} with c fixed by F(0)
  const Complex c = anchor / (-zeta);
  for (Complex z : {Complex(0.5, 0.5), Complex(-0.7, 0.1), zeta})
    CHECK(std::abs(F(z) - c * (z - zeta) * std::pow(1.0 + z / 2.0, 0.25)) < 1e-12);
  const TruncatedSeries t = F.taylor_at(zeta, 3);
  CHECK(t[0] == Complex(0.0));
  CHECK(std::abs(t[1] - c * std::pow(1.0 + zeta / 2.0, 0.25)) < 1e-12);

  const PowerRep G = PowerRep::with_zeros(mul(RationalRep(Poly::monomial(2)), base), 0.5,
                                          std::pow(std::pow(zeta, 4), 0.5), {{0.0, 2}, {zeta, 4}});
  CHECK(G.origin_order() == 2);
  CHECK_THROWS_AS(PowerRep::with_zeros(base, 0.25, anchor, {{Complex(0.5, 0.0), 1}}), DomainError);
}
