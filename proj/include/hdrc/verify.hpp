#pragma once

// Cross-check battery behind `hdrc verify`.

#include <string>
#include <vector>

#include "hdrc/solvers.hpp"

namespace hdrc::verify {

struct CheckResult {
  std::string name;
  bool hard = true;
  bool passed = true;
  std::string detail;  // failing inputs and values, or a summary
};

enum class Fault { none, phi };

struct Options {
  bool conjectures = false;
  Fault fault = Fault::none;
  TwoVarOptions solver{};
  std::uint64_t seed = 20240611;
};

struct Report {
  std::vector<CheckResult> checks;
  bool hard_ok() const;
};

Report run(const Options& opt);

std::string format_report(const Report& report);

}  // namespace hdrc::verify
