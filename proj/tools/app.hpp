#pragma once

#include <exception>

#include "json.hpp"

namespace bergman::app {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kValidation = 1;
inline constexpr int kNotApplicable = 2;
inline constexpr int kNoConvergence = 3;

struct RunOptions {
  bool timing = true;
};

struct Outcome {
  int exit_code = kOk;
  json report;
};

// Validates an envelope {version, command, params, rule?, cert_tol?} and runs
// it. Failures come back as a report with an "error" object and exit code.
Outcome run(const json& envelope, const RunOptions& opts = {});

int exit_code_for(const std::exception& e);

}  // namespace bergman::app
