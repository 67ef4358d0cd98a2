#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace icts::validate {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Full invariant suite behind the `validate` command: squeezer unitarity
// across the frequency grid (including the imaginary-Gamma region), the flux
// closed form, triangle-vs-quadrature agreement, the three-route coherence
// grid, loss composition, moment matrix structure and scan determinism.
//
// The environment variable ICTS_VALIDATE_FAULT=<check name> forces that check
// to fail; it exists so tests can exercise the failure exit path.
std::vector<CheckResult> run_validation_suite();

nlohmann::json to_json(const std::vector<CheckResult>& checks);

}  // namespace icts::validate
