#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "capsweep/capacity.hpp"
#include "capsweep/gauss.hpp"
#include "capsweep/kernel.hpp"
#include "capsweep/principles.hpp"
#include "capsweep/sweep.hpp"
#include "capsweep/types.hpp"

namespace capsweep {

using json = nlohmann::json;

/// Numeric table from a CSV file: one row per line, comma separated, an
/// optional non-numeric header line, equal column counts. Parse failures
/// name the offending row.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

/// Writes content to the target path through a sibling temp file plus
/// rename, so readers never observe a half-written file.
void atomic_write_text(const std::string& path, const std::string& content);

/// One CSV line from string cells; no quoting, cells must not contain commas.
std::string csv_line(const std::vector<std::string>& cells);

/// Shortest digit string that parses back to exactly the same double.
std::string format_double(double v);

json to_json(const Measure& mu);
json to_json(const KKTReport& rep);
json to_json(const SolveReport& rep);
json to_json(const CapacityReport& rep);
json to_json(const SweepReport& rep);
json to_json(const PrincipleReport& rep);
json to_json(const EnvelopeReport& rep);

/// Parses a measure given as a JSON array of weights or the shorthand
/// string "unit_at:<site>".
Measure measure_from_json(const json& spec, int n);

/// Declarative description of one workbench run, loaded from a JSON file.
/// Paths inside the document resolve relative to the document's directory.
struct ExperimentConfig {
  std::string task;
  json kernel;
  json params;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out;
  std::string csv;
  std::string base_dir;
};

ExperimentConfig load_config(const std::string& path);

/// Builds the kernel named by the config's kernel block: an inline matrix,
/// a matrix CSV file, or a distance-power kernel over a point cloud.
KernelMatrix kernel_from_config(const ExperimentConfig& config);

}  // namespace capsweep
