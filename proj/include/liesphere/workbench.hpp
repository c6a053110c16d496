#pragma once

// Declarative scenes: curves and spheres, a pipeline of operations with assertions,
// mesh/CSV outputs and a deterministic JSON report.

#include "liesphere/core.hpp"
#include "liesphere/exec.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace liesphere::workbench {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr int kReportVersion = 1;

// Invalid scene: exit code 2, nothing written.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage threw: exit code 1.
class StageError : public Error {
 public:
  StageError(const std::string& stage, const std::string& what)
      : Error("stage '" + stage + "': " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Throws SchemaError naming the first problem.
void check_scene(const json& scene);

struct RunResult {
  json report;
  bool pass = false;
  std::vector<std::string> files;  // relative to the output directory
};

// Validates, runs, then writes outputs and report.json into out_dir.
RunResult run_scene(const json& scene, const std::string& out_dir, Exec exec = default_exec());

std::vector<std::string> demo_names();
// grid: theta resolution (and u resolution where the demo has no fixed step)
json demo_scene(const std::string& name, int grid = 64, std::uint64_t seed = 1);

// $LIESPHERE_OUT, else "liesphere_out"
std::string default_out_dir();

}  // namespace liesphere::workbench
