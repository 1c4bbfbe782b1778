#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace netspec {

// One verification check.  A check that cannot run in the requested
// configuration is still listed, with status "skipped" and a reason.
struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string status = "ok";  // "ok" | "skipped"
  std::string reason;         // only for skipped checks
};

struct ResidualReport {
  std::string suite;
  int N = 256;
  int n_max = 3;
  double tau = 0.25;
  unsigned long long seed = 42;
  std::string graph;
  std::vector<Check> checks;

  bool all_pass() const;
};

// Deterministic JSON: fixed field order, every float rendered as %.12e.
// Identical inputs and seed give byte-identical output.
std::string report_json(const ResidualReport& report);

// Render any ordered_json tree with the same float policy.
std::string dump_deterministic(const nlohmann::ordered_json& j);

// The pinned float rendering used by every report and CSV: %.12e.
std::string fmt_e12(double x);

}  // namespace netspec
