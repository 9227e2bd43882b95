// command-line front end: flags or an envelope file -> JSON report on stdout

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "app.hpp"
#include "bergman/errors.hpp"

namespace {

using nlohmann::json;

// a path to a file holding JSON, or inline JSON
json json_arg(const std::string& text, const std::string& name) {
  try {
    if (std::filesystem::is_regular_file(text)) {
      std::ifstream is(text);
      if (!is) throw bergman::ValidationError("--" + name + ": cannot read " + text);
      return json::parse(is);
    }
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw bergman::ValidationError("--" + name + ": neither a file nor valid JSON (" + e.what() + ")");
  }
}

struct Command {
  CLI::App* sub;
  std::map<std::string, std::string> values;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal problems and canonical divisors in Bergman spaces"};
  app.require_subcommand(1);
  std::string rule, cert_tol;
  bool no_timing = false;
  app.add_option("--rule", rule, "quadrature rule as N_RADIAL,N_ANGULAR (default 64,256)");
  app.add_option("--cert-tol", cert_tol, "certificate tolerance (default 1e-6)");
  app.add_flag("--no-timing", no_timing, "omit the timing field from the report");

  std::string envelope_path = "-";
  CLI::App* run_cmd = app.add_subcommand("run", "run a JSON envelope from a file or stdin");
  run_cmd->add_option("file", envelope_path, "envelope path, - for stdin");
  run_cmd->fallthrough();

  // subcommand -> (flag, params key) pairs
  const std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> spec = {
      {"project", {{"kind", "kind"}, {"m", "m"}, {"n", "n"}, {"functionals", "functionals"}, {"F", "F"},
                   {"p", "p"}, {"degree", "degree"}}},
      {"interpolate", {{"p", "p"}, {"values", "values"}}},
      {"extremal-znb", {{"p", "p"}, {"N", "N"}, {"b", "b"}}},
      {"a4-onezero", {{"v1", "v1"}, {"v2", "v2"}}},
      {"divisor", {{"p", "p"}, {"zeros", "zeros"}}},
      {"verify", {{"F", "F"}, {"p", "p"}, {"allowed", "allowed"}, {"kernel", "kernel"}, {"degree", "degree"}}},
      {"oracle", {{"p", "p"}, {"values", "values"}, {"zeros", "zeros"}, {"degree", "degree"}, {"iters", "iters"}}},
      {"render", {{"function", "function"}, {"grid", "grid"}, {"out", "output"}}},
  };
  const std::map<std::string, std::string> blurb = {
      {"project", "Bergman projection of a monomial, kernel product or signed power"},
      {"interpolate", "minimal-norm function with prescribed derivatives at the origin"},
      {"extremal-znb", "extremal function for the functional pairing with z^N + b"},
      {"a4-onezero", "A^4 extremal with one zero from the values f'(0), f''(0)"},
      {"divisor", "canonical divisor for a zero set, p even"},
      {"verify", "check extremality of a given function"},
      {"oracle", "brute-force minimal norm over polynomials"},
      {"render", "write |F| on a grid as a binary PGM"},
  };
  std::vector<Command> commands;
  commands.reserve(spec.size());
  for (const auto& [name, flags] : spec) {
    Command c{app.add_subcommand(name, blurb.at(name)), {}};
    c.sub->fallthrough();
    commands.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (const auto& [flag, key] : spec[i].second) {
      commands[i].values[key];
      commands[i].sub->add_option("--" + flag, commands[i].values[key], "JSON value or file");
    }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : bergman::app::kValidation;
  }

  json envelope;
  try {
    if (run_cmd->parsed()) {
      std::string text;
      if (envelope_path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
      } else {
        std::ifstream is(envelope_path);
        if (!is) throw bergman::ValidationError("cannot read " + envelope_path);
        text.assign(std::istreambuf_iterator<char>(is), {});
      }
      envelope = json::parse(text);
    } else {
      for (std::size_t i = 0; i < spec.size(); ++i) {
        if (!commands[i].sub->parsed()) continue;
        json params = json::object();
        for (const auto& [flag, key] : spec[i].second) {
          const std::string& v = commands[i].values[key];
          if (v.empty()) continue;
          // free-form strings
          if (key == "kind" || key == "output")
            params[key] = v;
          else
            params[key] = json_arg(v, flag);
        }
        envelope = {{"version", bergman::app::kFormatVersion}, {"command", spec[i].first}, {"params", params}};
      }
    }
    if (!rule.empty()) {
      int r = 0, a = 0;
      char comma = 0;
      std::istringstream is(rule);
      if (!(is >> r >> comma >> a) || comma != ',' || !is.eof())
        throw bergman::ValidationError("--rule: expected N_RADIAL,N_ANGULAR");
      envelope["rule"] = {{"n_radial", r}, {"n_angular", a}};
    }
    if (!cert_tol.empty()) envelope["cert_tol"] = json_arg(cert_tol, "cert-tol");
  } catch (const std::exception& e) {
    json report = {{"version", bergman::app::kFormatVersion},
                   {"error", {{"type", "ValidationError"}, {"message", e.what()}}}};
    std::cout << report.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return bergman::app::kValidation;
  }

  const bergman::app::Outcome out = bergman::app::run(envelope, {.timing = !no_timing});
  std::cout << out.report.dump(2) << "\n";
  if (out.exit_code != 0) std::cerr << "error: " << out.report["error"]["message"].get<std::string>() << "\n";
  return out.exit_code;
}
