#include "app.hpp"

#include <chrono>
#include <fstream>

#include "bergman/divisor.hpp"
#include "bergman/errors.hpp"
#include "bergman/extremal.hpp"
#include "bergman/oracle.hpp"
#include "json_io.hpp"
#include "render.hpp"

namespace bergman::app {

namespace {

using io::complex_from;
using io::expect_keys;
using io::int_from;
using io::real_from;
using io::to_json;

struct Context {
  SolverOptions solver;
  json rule;
};

json warnings_json(const std::vector<std::string>& w) { return json(w); }

json cmd_project(const json& p, const Context& ctx) {
  if (!p.is_object() || !p.contains("kind") || !p["kind"].is_string())
    throw ValidationError("params: missing field \"kind\"");
  const std::string kind = p["kind"];
  if (kind == "monomial") {
    expect_keys(p, {"kind", "m", "n"}, {}, "params");
    const int m = int_from(p["m"], "params.m"), n = int_from(p["n"], "params.n");
    if (m < 0 || n < 0) throw ValidationError("params: m and n must be >= 0");
    return {{"projection", to_json(project_monomial(m, n))}};
  }
  if (kind == "kernel") {
    expect_keys(p, {"kind", "functionals"}, {}, "params");
    return {{"kernel", to_json(kernel_of(io::functionals_from(p["functionals"], "params.functionals")))}};
  }
  if (kind == "signed-power") {
    expect_keys(p, {"kind", "F", "p"}, {"degree"}, "params");
    const PowerRep F = io::power_from(p["F"], "params.F");
    const double pp = real_from(p["p"], "params.p");
    if (!(pp > 1.0)) throw ValidationError("params.p: must exceed 1");
    const int degree = p.contains("degree") ? int_from(p["degree"], "params.degree") : 16;
    if (degree < 0) throw ValidationError("params.degree: must be >= 0");
    const ProjectionResult r = project_signed_power(F, pp, ctx.solver.rule, degree);
    return {{"projection", to_json(r.value)}, {"symbolic", r.symbolic}};
  }
  throw ValidationError("params.kind: expected \"monomial\", \"kernel\" or \"signed-power\"");
}

json cmd_interpolate(const json& p, const Context& ctx, std::vector<std::string>& warnings) {
  expect_keys(p, {"p", "values"}, {}, "params");
  InterpolationProblem prob{real_from(p["p"], "params.p"), io::complex_list_from(p["values"], "params.values")};
  try {
    prob.validate();
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  const SolutionReport rep = solve_origin_interpolation(prob, ctx.solver);
  warnings = rep.warnings;
  return to_json(rep);
}

json cmd_znb(const json& p, const Context& ctx, std::vector<std::string>& warnings) {
  expect_keys(p, {"p", "N", "b"}, {}, "params");
  const ZnbSolution s = solve_linear_extremal_zNb(real_from(p["p"], "params.p"), int_from(p["N"], "params.N"),
                                                  complex_from(p["b"], "params.b"), ctx.solver);
  warnings = s.report.warnings;
  json j = to_json(s.report);
  j["a"] = to_json(s.a);
  return j;
}

json cmd_a4(const json& p, const Context& ctx, std::vector<std::string>& warnings) {
  expect_keys(p, {"v1", "v2"}, {}, "params");
  const A4Solution s = solve_a4_one_zero(complex_from(p["v1"], "params.v1"), complex_from(p["v2"], "params.v2"),
                                         ctx.solver);
  warnings = s.report.warnings;
  json j = to_json(s.report);
  j["a"] = to_json(s.a);
  j["b"] = to_json(s.b);
  j["c"] = to_json(s.c);
  j["residual"] = s.residual;
  json alts = json::array();
  for (const A4Candidate& c : s.alternates)
    alts.push_back({{"a", to_json(c.a)},
                    {"b", to_json(c.b)},
                    {"c", to_json(c.c)},
                    {"residual", c.residual},
                    {"norm", c.norm},
                    {"certified", c.certified}});
  j["alternates"] = alts;
  return j;
}

int even_p(const json& j, const std::string& where) {
  if (!j.is_number() || j.get<double>() != std::floor(j.get<double>()))
    throw ValidationError(where + ": expected an even integer");
  const double v = j.get<double>();
  if (v < 2 || std::fmod(v, 2.0) != 0.0 || v > 1e6) throw ValidationError(where + ": expected an even integer >= 2");
  return static_cast<int>(v);
}

json cmd_divisor(const json& p, const Context& ctx, std::vector<std::string>& warnings) {
  expect_keys(p, {"p", "zeros"}, {}, "params");
  const int pp = even_p(p["p"], "params.p");
  const ZeroSet zeros = io::zeros_from(p["zeros"], "params.zeros");
  try {
    validate_zero_set(zeros);
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  const DivisorSolution s = canonical_divisor(pp, zeros, ctx.solver);
  warnings = s.report.warnings;
  json j = to_json(s.report);
  j["ansatz"] = to_json(s.ansatz);
  j["leading_order"] = s.leading_order;
  j["leading_value"] = s.leading_value;
  j["singular_values"] = s.singular_values;
  j["null_gap"] = s.null_gap;
  j["residue_max"] = validate_residues(s.ansatz);
  return j;
}

json cmd_verify(const json& p, const Context& ctx) {
  expect_keys(p, {"F", "p"}, {"allowed", "kernel", "degree"}, "params");
  if (p.contains("allowed") == p.contains("kernel"))
    throw ValidationError("params: give exactly one of \"allowed\" and \"kernel\"");
  const PowerRep F = io::power_from(p["F"], "params.F");
  const double pp = real_from(p["p"], "params.p");
  if (!(pp > 1.0)) throw ValidationError("params.p: must exceed 1");
  const int degree = p.contains("degree") ? int_from(p["degree"], "params.degree") : (p.contains("kernel") ? 10 : 12);
  if (degree < 0) throw ValidationError("params.degree: must be >= 0");
  json j = {{"norm", ap_norm(F, pp, ctx.solver.rule)}};
  if (p.contains("allowed")) {
    j["extremality"] = check_extremality(F, pp, io::functionals_from(p["allowed"], "params.allowed"),
                                         ctx.solver.rule, degree);
  } else {
    const RationalRep k = io::rational_from(p["kernel"], "params.kernel");
    j["defect"] = extremality_defect(F, pp, k, ctx.solver.rule, degree);
  }
  return j;
}

json cmd_oracle(const json& p, const Context& ctx) {
  expect_keys(p, {"p"}, {"values", "zeros", "degree", "iters"}, "params");
  if (p.contains("values") == p.contains("zeros"))
    throw ValidationError("params: give exactly one of \"values\" and \"zeros\"");
  OracleConfig cfg;
  cfg.rule = ctx.solver.rule;
  if (p.contains("degree")) cfg.degree = int_from(p["degree"], "params.degree");
  if (p.contains("iters")) cfg.max_iters = int_from(p["iters"], "params.iters");
  if (cfg.max_iters < 1) throw ValidationError("params.iters: must be >= 1");
  const double pp = real_from(p["p"], "params.p");
  if (p.contains("values")) {
    const std::vector<Complex> v = io::complex_list_from(p["values"], "params.values");
    if (v.empty()) throw ValidationError("params.values: at least one value required");
    std::vector<Constraint> cons;
    for (std::size_t j = 0; j < v.size(); ++j)
      cons.push_back({FunctionalSpec::derivative(0.0, static_cast<int>(j)), v[j]});
    const OracleResult r = brute_force_min_norm(pp, cons, cfg);
    return {{"coeffs", to_json(r.coeffs)}, {"norm", r.norm}, {"iterations", r.iterations}};
  }
  const CanonicalOracleResult r = brute_force_canonical(pp, io::zeros_from(p["zeros"], "params.zeros"), cfg);
  return {{"coeffs", to_json(r.coeffs)}, {"leading_value", r.leading_value}, {"norm", r.norm}};
}

json cmd_render(const json& p) {
  expect_keys(p, {"function", "output"}, {"grid"}, "params");
  const json& f = p["function"];
  Evaluable F;
  if (f.is_object() && f.contains("exponent")) {
    F = io::power_from(f, "params.function");
  } else {
    F = io::rational_from(f, "params.function");
  }
  const int grid = p.contains("grid") ? int_from(p["grid"], "params.grid") : 256;
  if (!p["output"].is_string()) throw ValidationError("params.output: expected a path");
  const std::string path = p["output"];
  const Graymap g = render(F, grid);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("params.output: cannot open " + path);
  os << g.bytes;
  return {{"output", path}, {"grid", g.grid}, {"min", g.min}, {"max", g.max}};
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const InsufficientData*>(&e)) return "InsufficientData";
  if (dynamic_cast<const NotApplicable*>(&e)) return "NotApplicable";
  if (dynamic_cast<const HypothesisFailed*>(&e)) return "HypothesisFailed";
  if (dynamic_cast<const CertificateFailed*>(&e)) return "CertificateFailed";
  if (dynamic_cast<const InvalidSolution*>(&e)) return "InvalidSolution";
  if (dynamic_cast<const DegenerateNullSpace*>(&e)) return "DegenerateNullSpace";
  if (dynamic_cast<const BranchError*>(&e)) return "BranchError";
  if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return "ValidationError";
  return "Error";
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const InsufficientData*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e))
    return kValidation;
  if (dynamic_cast<const NoConvergence*>(&e)) return kNoConvergence;
  return kNotApplicable;
}

Outcome run(const json& envelope, const RunOptions& opts) {
  json report = {{"version", kFormatVersion}};
  try {
    expect_keys(envelope, {"version", "command", "params"}, {"rule", "cert_tol"}, "envelope");
    if (!envelope["version"].is_number_integer() || envelope["version"].get<int>() != kFormatVersion)
      throw ValidationError("envelope.version: expected " + std::to_string(kFormatVersion));
    if (!envelope["command"].is_string()) throw ValidationError("envelope.command: expected a string");
    const std::string command = envelope["command"];
    report["command"] = command;

    Context ctx;
    int n_radial = kDefaultRadial, n_angular = kDefaultAngular;
    if (envelope.contains("rule")) {
      const json& r = envelope["rule"];
      expect_keys(r, {"n_radial", "n_angular"}, {}, "envelope.rule");
      n_radial = int_from(r["n_radial"], "envelope.rule.n_radial");
      n_angular = int_from(r["n_angular"], "envelope.rule.n_angular");
      if (n_radial < 4 || n_angular < 8 || n_radial > 4096 || n_angular > 65536)
        throw ValidationError("envelope.rule: need 4 <= n_radial <= 4096 and 8 <= n_angular <= 65536");
    }
    if (envelope.contains("cert_tol")) {
      ctx.solver.cert_tol = real_from(envelope["cert_tol"], "envelope.cert_tol");
      if (!(ctx.solver.cert_tol > 0.0)) throw ValidationError("envelope.cert_tol: must be positive");
    }
    ctx.solver.rule = make_rule(n_radial, n_angular);
    json input = envelope;
    input["rule"] = {{"n_radial", n_radial}, {"n_angular", n_angular}};
    input["cert_tol"] = ctx.solver.cert_tol;
    report["input"] = input;

    const json& params = envelope["params"];
    if (!params.is_object()) throw ValidationError("envelope.params: expected an object");
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    json result;
    if (command == "project")
      result = cmd_project(params, ctx);
    else if (command == "interpolate")
      result = cmd_interpolate(params, ctx, warnings);
    else if (command == "extremal-znb")
      result = cmd_znb(params, ctx, warnings);
    else if (command == "a4-onezero")
      result = cmd_a4(params, ctx, warnings);
    else if (command == "divisor")
      result = cmd_divisor(params, ctx, warnings);
    else if (command == "verify")
      result = cmd_verify(params, ctx);
    else if (command == "oracle")
      result = cmd_oracle(params, ctx);
    else if (command == "render")
      result = cmd_render(params);
    else
      throw ValidationError("envelope.command: unknown command \"" + command + "\"");
    const auto stop = std::chrono::steady_clock::now();

    report["result"] = result;
    report["warnings"] = warnings_json(warnings);
    if (opts.timing) report["timing_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
    return {kOk, report};
  } catch (const std::exception& e) {
    report["error"] = {{"type", error_type(e)}, {"message", e.what()}};
    return {exit_code_for(e), report};
  }
}

}  // namespace bergman::app
