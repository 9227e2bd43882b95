#include "bergman/funcrep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Poly Poly::monomial(int k, Complex c) {
  std::vector<Complex> v(k + 1, Complex(0.0));
  v[k] = c;
  return Poly(std::move(v));
}

void Poly::normalize() {
  while (!coeffs_.empty() && std::abs(coeffs_.back()) < kDropTol) coeffs_.pop_back();
}

std::optional<int> Poly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<int>(coeffs_.size()) - 1;
}

Complex Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[k];
}

Complex Poly::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative(int order) const {
  if (order <= 0) return *this;
  const int n = static_cast<int>(coeffs_.size());
  if (order >= n) return Poly();
  std::vector<Complex> d(n - order);
  for (int k = order; k < n; ++k) {
    double f = 1.0;
    for (int i = 0; i < order; ++i) f *= (k - i);
    d[k - order] = f * coeffs_[k];
  }
  return Poly(std::move(d));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  normalize();
  return *this;
}

Poly& Poly::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  normalize();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(c));
}

// ---------------------------------------------------------------------------
// PoleTerm / RationalRep

Complex PoleTerm::operator()(Complex z) const {
  return coef / std::pow(1.0 - std::conj(a) * z, order);
}

bool same_point(Complex a, Complex b) { return std::abs(a - b) <= kBasePointTol; }

RationalRep::RationalRep(Poly poly) : poly_(std::move(poly)) {}

RationalRep::RationalRep(Poly poly, std::vector<PoleTerm> terms)
    : poly_(std::move(poly)), terms_(std::move(terms)) {
  normalize();
}

RationalRep RationalRep::pole(Complex a, int order, Complex coef) {
  return RationalRep(Poly(), {PoleTerm{a, order, coef}});
}

void RationalRep::normalize() {
  std::vector<PoleTerm> merged;
  std::vector<Complex> points;
  for (const PoleTerm& t : terms_) {
    const double r = std::abs(t.a);
    if (!(r > 0.0 && r < 1.0))
      throw DomainError("pole term base point must satisfy 0 < |a| < 1");
    if (t.order < 1) throw DomainError("pole term order must be >= 1");
    Complex a = t.a;
    for (Complex q : points)
      if (same_point(q, a)) a = q;
    if (std::find(points.begin(), points.end(), a) == points.end()) points.push_back(a);
    auto it = std::find_if(merged.begin(), merged.end(), [&](const PoleTerm& m) {
      return m.a == a && m.order == t.order;
    });
    if (it == merged.end())
      merged.push_back(PoleTerm{a, t.order, t.coef});
    else
      it->coef += t.coef;
  }
  std::erase_if(merged, [](const PoleTerm& t) { return std::abs(t.coef) < kDropTol; });
  std::sort(merged.begin(), merged.end(), [](const PoleTerm& x, const PoleTerm& y) {
    if (x.a.real() != y.a.real()) return x.a.real() < y.a.real();
    if (x.a.imag() != y.a.imag()) return x.a.imag() < y.a.imag();
    return x.order < y.order;
  });
  terms_ = std::move(merged);
}

std::vector<Complex> RationalRep::base_points() const {
  std::vector<Complex> pts;
  for (const PoleTerm& t : terms_)
    if (pts.empty() || pts.back() != t.a) pts.push_back(t.a);
  return pts;
}

int RationalRep::max_order_at(Complex a) const {
  int k = 0;
  for (const PoleTerm& t : terms_)
    if (same_point(t.a, a)) k = std::max(k, t.order);
  return k;
}

Complex RationalRep::operator()(Complex z) const {
  Complex v = poly_(z);
  for (const PoleTerm& t : terms_) v += t(z);
  return v;
}

RationalRep& RationalRep::operator+=(const RationalRep& o) {
  poly_ += o.poly_;
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

RationalRep& RationalRep::operator-=(const RationalRep& o) { return *this += o * Complex(-1.0); }

RationalRep& RationalRep::operator*=(Complex s) {
  poly_ *= s;
  for (PoleTerm& t : terms_) t.coef *= s;
  normalize();
  return *this;
}

Complex eval(const RationalRep& f, Complex z) { return f(z); }

RationalRep derivative(const RationalRep& f, int order) {
  if (order < 0) throw DomainError("derivative order must be >= 0");
  std::vector<PoleTerm> terms;
  for (const PoleTerm& t : f.terms()) {
    Complex c = t.coef;
    for (int r = 0; r < order; ++r) c *= static_cast<double>(t.order + r) * std::conj(t.a);
    terms.push_back(PoleTerm{t.a, t.order + order, c});
  }
  return RationalRep(f.poly().derivative(order), std::move(terms));
}

std::map<int, Complex> partial_fractions_shifted_monomial(int n, Complex a) {
  if (n < 0) throw DomainError("partial fractions: n must be >= 0");
  if (a == 0.0) throw DomainError("partial fractions: base point must be nonzero");
  // z = (1 - w)/conj(a) with w = 1 - conj(a) z, so z^n = conj(a)^{-n} (1 - w)^n.
  const Complex inv = 1.0 / std::pow(std::conj(a), n);
  std::map<int, Complex> b;
  for (int i = 0; i <= n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    b[n + 2 - i] = inv * (sign * binomial(n, i));
  }
  return b;
}

Complex residue_at_pole(const RationalRep& f, Complex a) {
  bool found = false;
  Complex r = 0.0;
  for (const PoleTerm& t : f.terms()) {
    if (!same_point(t.a, a)) continue;
    found = true;
    if (t.order == 1) r -= t.coef / std::conj(t.a);
  }
  if (!found) throw DomainError("residue_at_pole: a is not a base point");
  return r;
}

TruncatedSeries taylor_at(const RationalRep& f, Complex z0, int n) {
  if (n < 0) throw DomainError("taylor order must be >= 0");
  std::vector<Complex> c(n + 1, Complex(0.0));
  const auto& p = f.poly().coeffs();
  // shifted polynomial: sum_j p_j C(j, i) z0^{j-i}
  for (int i = 0; i <= n; ++i) {
    Complex acc = 0.0;
    for (int j = static_cast<int>(p.size()) - 1; j >= i; --j)
      acc = acc * z0 + p[j] * binomial(j, i);
    c[i] = acc;
  }
  for (const PoleTerm& t : f.terms()) {
    const Complex ac = std::conj(t.a);
    const Complex base = 1.0 - ac * z0;
    const Complex rho = ac / base;
    Complex scale = t.coef / std::pow(base, t.order);
    for (int m = 0; m <= n; ++m) {
      c[m] += scale * binomial(m + t.order - 1, t.order - 1);
      scale *= rho;
    }
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries taylor_at_origin(const RationalRep& f, int n) { return taylor_at(f, 0.0, n); }

namespace {

// (1 - conj(a) z)^m as a polynomial.
Poly w_power(Complex a, int m) {
  std::vector<Complex> c(m + 1);
  const Complex ac = -std::conj(a);
  Complex pw = 1.0;
  for (int k = 0; k <= m; ++k) {
    c[k] = binomial(m, k) * pw;
    pw *= ac;
  }
  return Poly(std::move(c));
}

// d_i with P(z) = sum_i d_i w^i, w = 1 - conj(a) z.
std::vector<Complex> poly_in_w(const Poly& p, Complex a) {
  const auto& c = p.coeffs();
  std::vector<Complex> d(c.size(), Complex(0.0));
  const Complex inv = 1.0 / std::conj(a);
  Complex pw = 1.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      d[i] += c[j] * pw * (sign * binomial(static_cast<int>(j), static_cast<int>(i)));
    }
    pw *= inv;
  }
  return d;
}

RationalRep poly_times_pole(const Poly& p, const PoleTerm& t) {
  const std::vector<Complex> d = poly_in_w(p, t.a);
  Poly poly;
  std::vector<PoleTerm> terms;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const int k = t.order - static_cast<int>(i);
    if (k > 0)
      terms.push_back(PoleTerm{t.a, k, t.coef * d[i]});
    else
      poly += w_power(t.a, -k) * (t.coef * d[i]);
  }
  return RationalRep(std::move(poly), std::move(terms));
}

// 1/(u^k v^l), u = 1 - conj(a) z, v = 1 - conj(b) z, a != b.
std::vector<PoleTerm> split_pole_pair(Complex a, int k, Complex b, int l) {
  std::vector<PoleTerm> out;
  auto half = [&](Complex a1, int k1, Complex b1, int l1) {
    // v = alpha + beta u
    const Complex alpha = (std::conj(a1) - std::conj(b1)) / std::conj(a1);
    const Complex beta = std::conj(b1) / std::conj(a1);
    const Complex ratio = -beta / alpha;
    const Complex lead = 1.0 / std::pow(alpha, l1);
    Complex pw = 1.0;
    for (int m = 0; m < k1; ++m) {
      out.push_back(PoleTerm{a1, k1 - m, lead * binomial(l1 + m - 1, m) * pw});
      pw *= ratio;
    }
  };
  half(a, k, b, l);
  half(b, l, a, k);
  return out;
}

RationalRep pole_times_pole(const PoleTerm& x, const PoleTerm& y) {
  const Complex c = x.coef * y.coef;
  if (same_point(x.a, y.a)) return RationalRep::pole(x.a, x.order + y.order, c);
  std::vector<PoleTerm> terms = split_pole_pair(x.a, x.order, y.a, y.order);
  for (PoleTerm& t : terms) t.coef *= c;
  return RationalRep(Poly(), std::move(terms));
}

}  // namespace

RationalRep mul(const RationalRep& f, const RationalRep& g) {
  RationalRep out(f.poly() * g.poly());
  for (const PoleTerm& t : g.terms()) out += poly_times_pole(f.poly(), t);
  for (const PoleTerm& t : f.terms()) out += poly_times_pole(g.poly(), t);
  for (const PoleTerm& x : f.terms())
    for (const PoleTerm& y : g.terms()) out += pole_times_pole(x, y);
  return out;
}

RationalRep power(const RationalRep& f, int n) {
  if (n < 0) throw DomainError("power: exponent must be >= 0");
  RationalRep out(Poly::constant(1.0));
  for (int i = 0; i < n; ++i) out = mul(out, f);
  return out;
}

NumeratorForm numerator_form(const RationalRep& f) {
  NumeratorForm form;
  for (Complex a : f.base_points()) form.denominator.emplace_back(a, f.max_order_at(a));

  auto denominator_except = [&](std::optional<Complex> skip, int reduce) {
    Poly d = Poly::constant(1.0);
    for (const auto& [a, k] : form.denominator) {
      const int m = (skip && a == *skip) ? k - reduce : k;
      d = d * w_power(a, m);
    }
    return d;
  };

  Poly num = f.poly() * denominator_except(std::nullopt, 0);
  for (const PoleTerm& t : f.terms()) num += denominator_except(t.a, t.order) * t.coef;
  form.numerator = std::move(num);
  return form;
}

Complex contour_residue(const Evaluable& f, Complex center, double radius, int nodes) {
  Complex acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double th = 2.0 * std::numbers::pi * k / nodes;
    const Complex dz = std::polar(radius, th);
    acc += f(center + dz) * dz;
  }
  return acc / static_cast<double>(nodes);
}

}  // namespace bergman
