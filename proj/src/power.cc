#include "bergman/power.hpp"

#include <algorithm>
#include <cmath>

#include "bergman/errors.hpp"
#include "bergman/roots.hpp"

namespace bergman {

struct PowerRep::Factorization {
  int origin_order = 0;
  Complex lead;  // C
  std::vector<DiscZero> disc;
  std::vector<Complex> outer;
  std::vector<std::pair<Complex, int>> poles;
  double residual = 0.0;
};

namespace {

bool near_integer(double x, double tol = 1e-9) { return std::abs(x - std::round(x)) <= tol; }

Complex ipow(Complex z, int n) {
  Complex r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

Complex polish(const Poly& n, Complex z, int m) {
  const Poly f = n.derivative(m - 1);
  const Poly df = f.derivative(1);
  Complex x = z;
  for (int it = 0; it < 30; ++it) {
    const Complex d = df(x);
    if (d == 0.0) break;
    const Complex step = f(x) / d;
    x -= step;
    if (std::abs(step) < 1e-17) break;
  }
  return std::abs(x - z) < kRootClusterTol ? x : z;
}

}  // namespace

std::shared_ptr<const PowerRep::Factorization> PowerRep::factorize(
    const RationalRep& base, const std::vector<DiscZero>& known) {
  auto fac = std::make_shared<Factorization>();
  const NumeratorForm nf = numerator_form(base);
  if (nf.numerator.is_zero()) throw DomainError("PowerRep: base is identically zero");
  fac->poles = nf.denominator;

  // divide out declared zeros; what is left over must be rounding noise
  std::vector<Complex> num = nf.numerator.coeffs();
  double scale = 0.0;
  for (Complex c : num) scale = std::max(scale, std::abs(c));
  double defect = 0.0;
  for (const DiscZero& d : known) {
    if (!(std::abs(d.point) <= 1.0 + 1e-10) || d.multiplicity < 1)
      throw DomainError("PowerRep: declared zeros must lie in the closed disc with multiplicity >= 1");
    if (static_cast<int>(num.size()) <= d.multiplicity)
      throw DomainError("PowerRep: declared zeros exceed the numerator degree");
    for (int k = 0; k < d.multiplicity; ++k) {
      // forward deflation by (z - zeta), stable for zeros of small modulus
      const int deg = static_cast<int>(num.size()) - 1;
      std::vector<Complex> q(deg);
      Complex acc = num[deg];
      for (int j = deg - 1; j >= 0; --j) {
        q[j] = acc;
        acc = num[j] + d.point * acc;
      }
      defect = std::max(defect, std::abs(acc) / scale);
      num = std::move(q);
    }
    if (d.point == 0.0)
      fac->origin_order += d.multiplicity;
    else
      fac->disc.push_back(d);
  }
  if (defect > 1e-8) throw DomainError("PowerRep: base does not vanish at a declared zero");

  const std::vector<Complex> roots = find_roots(Poly(std::move(num)));
  std::vector<Complex> near_disc;
  for (Complex r : roots) {
    if (std::abs(r) < 1.0 + 1e-3)
      near_disc.push_back(r);
    else
      fac->outer.push_back(r);
  }
  for (const RootCluster& c : cluster_roots(near_disc, kRootClusterTol)) {
    if (std::abs(c.center) < 1e-7) {
      fac->origin_order += c.multiplicity;
    } else if (std::abs(c.center) <= 1.0 + 1e-10) {
      fac->disc.push_back(DiscZero{polish(nf.numerator, c.center, c.multiplicity), c.multiplicity});
    } else {
      for (Complex r : near_disc)
        if (std::abs(r - c.center) < c.multiplicity * kRootClusterTol) fac->outer.push_back(r);
    }
  }
  std::sort(fac->disc.begin(), fac->disc.end(), [](const DiscZero& x, const DiscZero& y) {
    return std::abs(x.point) < std::abs(y.point);
  });

  // merge declared and found zeros at the same point
  std::vector<DiscZero> merged;
  for (const DiscZero& d : fac->disc) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const DiscZero& m) {
      return std::abs(m.point - d.point) < kRootClusterTol;
    });
    if (it == merged.end())
      merged.push_back(d);
    else
      it->multiplicity += d.multiplicity;
  }
  fac->disc = std::move(merged);
  fac->residual = defect;

  fac->lead = taylor_at_origin(base, fac->origin_order)[fac->origin_order];
  if (fac->lead == 0.0) throw DomainError("PowerRep: could not isolate the leading coefficient");

  // self-check of the factorization at probe points
  for (Complex z : {std::polar(0.31, 1.1), std::polar(0.67, 2.6), std::polar(0.93, -2.2)}) {
    Complex v = fac->lead * ipow(z, fac->origin_order);
    for (const DiscZero& d : fac->disc) v *= ipow(1.0 - z / d.point, d.multiplicity);
    for (Complex r : fac->outer) v *= 1.0 - z / r;
    for (const auto& [a, k] : fac->poles) v /= ipow(1.0 - std::conj(a) * z, k);
    const Complex b = base(z);
    const double scale = std::max(std::abs(b), 1e-300);
    fac->residual = std::max(fac->residual, std::abs(v - b) / scale);
  }
  return fac;
}

PowerRep::PowerRep(RationalRep base, double exponent, Complex anchor)
    : base_(std::move(base)), exponent_(exponent), anchor_(anchor) {
  fac_ = factorize(base_);
  validate();
}

PowerRep::PowerRep(RationalRep base, double exponent, Complex anchor,
                   std::shared_ptr<const Factorization> fac)
    : base_(std::move(base)), exponent_(exponent), anchor_(anchor), fac_(std::move(fac)) {
  validate();
}

void PowerRep::validate() const {
  const double tk = exponent_ * fac_->origin_order;
  if (fac_->origin_order > 0 && (!near_integer(tk) || tk < 0.0))
    throw DomainError("PowerRep: zero of base at the origin is a branch point");
  if (anchor_ == 0.0) throw DomainError("PowerRep: anchor must be nonzero");
  const double expected = std::pow(std::abs(fac_->lead), exponent_);
  if (std::abs(std::abs(anchor_) - expected) > 1e-12 * std::max(1.0, expected))
    throw DomainError("PowerRep: |anchor| is inconsistent with the base");
}

PowerRep PowerRep::with_zeros(RationalRep base, double exponent, Complex anchor,
                              const std::vector<DiscZero>& zeros) {
  auto fac = factorize(base, zeros);
  return PowerRep(std::move(base), exponent, anchor, std::move(fac));
}

PowerRep PowerRep::principal(RationalRep base, double exponent) {
  auto fac = factorize(base);
  const Complex anchor = std::pow(fac->lead, exponent);
  return PowerRep(std::move(base), exponent, anchor, std::move(fac));
}

int PowerRep::origin_order() const { return fac_->origin_order; }
Complex PowerRep::base_leading_coefficient() const { return fac_->lead; }
const std::vector<DiscZero>& PowerRep::disc_zeros() const { return fac_->disc; }
double PowerRep::factorization_residual() const { return fac_->residual; }

Complex PowerRep::eval_excluding(Complex z, int skip_zero) const {
  const double t = exponent_;
  Complex v = anchor_;
  if (fac_->origin_order > 0 && skip_zero != -1)
    v *= ipow(z, static_cast<int>(std::lround(t * fac_->origin_order)));
  for (int i = 0; i < static_cast<int>(fac_->disc.size()); ++i) {
    if (i == skip_zero) continue;
    const DiscZero& d = fac_->disc[i];
    const double e = t * d.multiplicity;
    const Complex w = z / d.point;
    if (near_integer(e) && e >= -1e-9) {
      v *= ipow(1.0 - w, static_cast<int>(std::lround(e)));
    } else {
      if (std::abs(w.imag()) <= 1e-12 * std::max(1.0, std::abs(w)) && w.real() >= 1.0 - 1e-12)
        throw BranchError("eval_power: path from 0 crosses a branch-point zero of the base");
      v *= std::exp(e * std::log(1.0 - w));
    }
  }
  for (Complex r : fac_->outer) v *= std::exp(t * std::log(1.0 - z / r));
  for (const auto& [a, k] : fac_->poles) v *= std::exp(-t * k * std::log(1.0 - std::conj(a) * z));
  return v;
}

Complex PowerRep::operator()(Complex z) const {
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("eval_power: |z| > 1");
  return eval_excluding(z, -2);
}

Complex eval_power(const PowerRep& f, Complex z) { return f(z); }

PowerRep PowerRep::pow(double s) const {
  return PowerRep(base_, exponent_ * s, std::pow(anchor_, s), fac_);
}

PowerRep PowerRep::scaled(Complex lambda) const {
  if (lambda == 0.0) throw DomainError("PowerRep::scaled: zero factor");
  const Complex mu = std::pow(lambda, 1.0 / exponent_);
  auto fac = std::make_shared<Factorization>(*fac_);
  fac->lead *= mu;
  return PowerRep(base_ * mu, exponent_, anchor_ * lambda, std::move(fac));
}

TruncatedSeries PowerRep::taylor_at(Complex z0, int n) const {
  if (std::abs(z0) >= 1.0) throw DomainError("PowerRep::taylor_at: |z0| must be < 1");
  const double t = exponent_;
  int skip = -2;
  int mult = 0;
  if (fac_->origin_order > 0 && std::abs(z0) < 1e-12) {
    skip = -1;
    mult = fac_->origin_order;
    z0 = 0.0;
  } else {
    for (int i = 0; i < static_cast<int>(fac_->disc.size()); ++i)
      if (std::abs(z0 - fac_->disc[i].point) < 1e-9) {
        skip = i;
        mult = fac_->disc[i].multiplicity;
      }
  }

  if (skip == -2) {
    const TruncatedSeries s = bergman::taylor_at(base_, z0, n);
    const Complex f0 = (*this)(z0);
    if (std::abs(s[0]) < 1e-300) throw DomainError("PowerRep::taylor_at: base vanishes at z0");
    const Complex a0 = std::polar(std::pow(std::abs(s[0]), t), std::arg(f0));
    return beta_power(s, t, a0);
  }

  const double e_real = t * mult;
  if (!near_integer(e_real)) throw BranchError("PowerRep::taylor_at: z0 is a branch point");
  const int e = static_cast<int>(std::lround(e_real));
  const TruncatedSeries full = bergman::taylor_at(base_, z0, n + mult);
  std::vector<Complex> q(full.coeffs().begin() + mult, full.coeffs().end());
  // F = (z - z0)^e R with R = q^t; for z0 != 0 the factor (1 - z/zeta)^e
  // contributes (-1/zeta)^e.
  Complex r0 = eval_excluding(z0, skip);
  if (skip >= 0) r0 *= ipow(-1.0 / fac_->disc[skip].point, e);
  const Complex a0 = std::polar(std::pow(std::abs(q[0]), t), std::arg(r0));
  const TruncatedSeries r = beta_power(TruncatedSeries(std::move(q)), t, a0);
  std::vector<Complex> out(n + 1, Complex(0.0));
  for (int j = e; j <= n; ++j) out[j] = r[j - e];
  return TruncatedSeries(std::move(out));
}

}  // namespace bergman
