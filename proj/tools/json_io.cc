#include "json_io.hpp"

#include <cmath>
#include <set>

#include "bergman/errors.hpp"

namespace bergman::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (Complex z : v) out.push_back(to_json(z));
  return out;
}

json to_json(const Poly& p) { return to_json(p.coeffs()); }

json to_json(const RationalRep& f) {
  json poles = json::array();
  for (const PoleTerm& t : f.terms())
    poles.push_back({{"a", to_json(t.a)}, {"order", t.order}, {"coef", to_json(t.coef)}});
  return {{"poly", to_json(f.poly())}, {"poles", poles}};
}

json to_json(const PowerRep& F) {
  json zeros = json::array();
  if (F.origin_order() > 0) zeros.push_back(json::array({to_json(0.0), F.origin_order()}));
  for (const DiscZero& d : F.disc_zeros()) zeros.push_back(json::array({to_json(d.point), d.multiplicity}));
  return {{"base", to_json(F.base())},
          {"exponent", F.exponent()},
          {"anchor", to_json(F.anchor())},
          {"zeros", zeros}};
}

json to_json(const FunctionalSpec& s) {
  const bool deriv = s.kind == FunctionalSpec::Kind::derivative_eval;
  json j = {{"kind", deriv ? "derivative" : "averaged"},
            {"point", to_json(s.point)},
            {"coefficient", to_json(s.coefficient)}};
  if (deriv) j["order"] = s.order;
  return j;
}

json to_json(const Certificate& c) {
  json details = json::object();
  for (const auto& [k, v] : c.details) details[k] = v;
  json j = {{"kind", c.kind},
            {"allowed_degree", c.allowed_degree},
            {"max_offending", c.max_offending},
            {"tolerance", c.tolerance},
            {"passed", c.passed()},
            {"projection", to_json(c.projection)},
            {"details", details}};
  j["symbolic"] = c.symbolic ? json(*c.symbolic) : json(nullptr);
  return j;
}

json to_json(const SolutionReport& r) {
  return {{"F", to_json(r.F)}, {"norm", r.norm}, {"certificate", to_json(r.certificate)}};
}

json to_json(const DivisorAnsatz& a) {
  json blocks = json::array();
  for (const auto& b : a.pole_blocks) blocks.push_back({{"point", to_json(b.point)}, {"coefs", to_json(b.coefs)}});
  return {{"M", a.M},
          {"c0", to_json(a.c0)},
          {"origin_order", a.origin_order},
          {"origin_block", to_json(a.origin_block)},
          {"pole_blocks", blocks}};
}

double real_from(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

int int_from(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

Complex complex_from(const json& j, const std::string& where) {
  if (j.is_number()) return real_from(j, where);
  if (j.is_array() && j.size() == 2) return {real_from(j[0], where), real_from(j[1], where)};
  fail(where, "expected a number or [re, im]");
}

std::vector<Complex> complex_list_from(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(complex_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Poly poly_from(const json& j, const std::string& where) { return Poly(complex_list_from(j, where)); }

RationalRep rational_from(const json& j, const std::string& where) {
  expect_keys(j, {"poly"}, {"poles"}, where);
  std::vector<PoleTerm> terms;
  if (j.contains("poles")) {
    const json& poles = j["poles"];
    if (!poles.is_array()) fail(where + ".poles", "expected an array");
    for (std::size_t i = 0; i < poles.size(); ++i) {
      const std::string w = where + ".poles[" + std::to_string(i) + "]";
      expect_keys(poles[i], {"a", "order", "coef"}, {}, w);
      terms.push_back({complex_from(poles[i]["a"], w + ".a"), int_from(poles[i]["order"], w + ".order"),
                       complex_from(poles[i]["coef"], w + ".coef")});
    }
  }
  try {
    return RationalRep(poly_from(j["poly"], where + ".poly"), std::move(terms));
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
}

PowerRep power_from(const json& j, const std::string& where) {
  expect_keys(j, {"base", "exponent", "anchor"}, {"zeros"}, where);
  const RationalRep base = rational_from(j["base"], where + ".base");
  const double t = real_from(j["exponent"], where + ".exponent");
  const Complex anchor = complex_from(j["anchor"], where + ".anchor");
  std::vector<DiscZero> zeros;
  if (j.contains("zeros"))
    for (const ZeroEntry& z : zeros_from(j["zeros"], where + ".zeros")) zeros.push_back({z.point, z.multiplicity});
  try {
    return PowerRep::with_zeros(base, t, anchor, zeros);
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
}

FunctionalSpec functional_from(const json& j, const std::string& where) {
  expect_keys(j, {"kind", "point"}, {"order", "coefficient"}, where);
  if (!j["kind"].is_string()) fail(where + ".kind", "expected a string");
  const std::string kind = j["kind"];
  const Complex point = complex_from(j["point"], where + ".point");
  const Complex coef = j.contains("coefficient") ? complex_from(j["coefficient"], where + ".coefficient") : 1.0;
  FunctionalSpec s;
  if (kind == "derivative") {
    s = FunctionalSpec::derivative(point, j.contains("order") ? int_from(j["order"], where + ".order") : 0, coef);
  } else if (kind == "averaged") {
    if (j.contains("order")) fail(where, "averaged functionals take no order");
    s = FunctionalSpec::averaged(point, coef);
  } else {
    fail(where + ".kind", "expected \"derivative\" or \"averaged\"");
  }
  try {
    s.validate();
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
  return s;
}

std::vector<FunctionalSpec> functionals_from(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  std::vector<FunctionalSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(functional_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

ZeroSet zeros_from(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  auto entry = [&](const json& e, const std::string& w) {
    if (!e.is_array() || e.size() != 2) fail(w, "expected [point, multiplicity]");
    return ZeroEntry{complex_from(e[0], w + "[0]"), int_from(e[1], w + "[1]")};
  };
  // a bare [point, multiplicity]: entries of a list are never numbers
  if (j.size() == 2 && j[1].is_number()) return {entry(j, where)};
  ZeroSet out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(entry(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

void expect_keys(const json& j, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) fail(where, std::string("missing field \"") + k + "\"");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) fail(where, "unknown field \"" + k + "\"");
}

}  // namespace bergman::io
