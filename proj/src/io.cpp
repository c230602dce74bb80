#include "capsweep/io.hpp"

#include <cerrno>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace capsweep {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& cell, double* out) {
  if (cell.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(cell.c_str(), &end);
  if (errno != 0 || end != cell.c_str() + cell.size()) return false;
  *out = v;
  return true;
}

json measure_to_array(const Eigen::VectorXd& w) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < w.size(); ++i) arr.push_back(w[i]);
  return arr;
}

Eigen::MatrixXd matrix_from_json(const json& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array()) {
    throw ParseError(what + " must be a non-empty array of arrays");
  }
  const std::size_t cols = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) {
      throw ParseError(what + " row " + std::to_string(i) + " has inconsistent length");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rows[i][j].is_number()) {
        throw ParseError(what + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not a number");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  const fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (fs::path(base_dir) / p).string();
}

}  // namespace

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> cells = split_csv_row(line);
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!parse_double(cells[j], &row[j])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first_data_line) {
        first_data_line = false;
        continue;
      }
      throw ParseError(path + " row " + std::to_string(lineno) + " has a non-numeric cell");
    }
    first_data_line = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(path + " row " + std::to_string(lineno) + " has " +
                       std::to_string(row.size()) + " cells, expected " +
                       std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + " contains no data rows");

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

void atomic_write_text(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ",";
    line += cells[i];
  }
  return line + "\n";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json to_json(const Measure& mu) { return measure_to_array(mu.weights()); }

json to_json(const KKTReport& rep) {
  return json{{"max_under_shoot", rep.max_under_shoot},
              {"max_support_gap", rep.max_support_gap},
              {"complementarity_gap", rep.complementarity_gap},
              {"support_eps", rep.support_eps}};
}

json to_json(const SolveReport& rep) {
  return json{{"measure", to_json(rep.measure)},
              {"value", rep.value},
              {"residuals",
               {{"max_under_shoot", rep.max_under_shoot}, {"max_support_gap", rep.max_support_gap}}},
              {"tolerance", rep.tolerance},
              {"iterations", rep.iterations},
              {"status", to_string(rep.status)}};
}

json to_json(const CapacityReport& rep) {
  json j{{"c", rep.c},
         {"gamma", rep.gamma},
         {"duality_gap", rep.duality_gap},
         {"capacitary_measure", to_json(rep.capacitary_measure)}};
  if (rep.gcapa) j["gcapa"] = *rep.gcapa;
  return j;
}

json to_json(const SweepReport& rep) {
  return json{{"swept", to_json(rep.swept)},
              {"c_value", rep.c_value},
              {"residual_a", rep.residual_a},
              {"residual_b", rep.residual_b},
              {"energy_identity_gap", rep.energy_identity_gap},
              {"is_proper", rep.is_proper}};
}

json to_json(const PrincipleReport& rep) {
  json j{{"principle", to_string(rep.principle)},
         {"holds", rep.holds},
         {"method", to_string(rep.method)}};
  if (rep.principle == Principle::Maximum || rep.principle == Principle::DilatedMaximum) {
    j["k"] = rep.k;
  }
  if (rep.witness) {
    json w{{"measure", to_json(rep.witness->mu)},
           {"site", rep.witness->site},
           {"amount", rep.witness->amount}};
    if (rep.witness->omega) w["omega"] = to_json(*rep.witness->omega);
    j["witness"] = w;
  }
  return j;
}

json to_json(const EnvelopeReport& rep) {
  return json{{"measure", to_json(rep.measure)},
              {"support_residual", rep.support_residual},
              {"global_residual", rep.global_residual}};
}

Measure measure_from_json(const json& spec, int n) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    const std::string prefix = "unit_at:";
    if (s.rfind(prefix, 0) != 0) {
      throw ParseError("measure shorthand '" + s + "' is not of the form unit_at:<site>");
    }
    int site = 0;
    try {
      site = std::stoi(s.substr(prefix.size()));
    } catch (const std::exception&) {
      throw ParseError("measure shorthand '" + s + "' has a malformed site number");
    }
    return Measure::unit_at(n, site);
  }
  if (!spec.is_array()) throw ParseError("measure must be an array of weights or unit_at:<site>");
  if (static_cast<int>(spec.size()) != n) {
    throw DimensionMismatch("measure has " + std::to_string(spec.size()) + " weights, space has " +
                            std::to_string(n));
  }
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    if (!spec[static_cast<std::size_t>(i)].is_number()) {
      throw ParseError("measure weight " + std::to_string(i) + " is not a number");
    }
    w[i] = spec[static_cast<std::size_t>(i)].get<double>();
  }
  return Measure(std::move(w));
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(path + ": configuration must be a JSON object");

  ExperimentConfig config;
  config.base_dir = fs::path(path).parent_path().string();
  if (doc.contains("task")) config.task = doc["task"].get<std::string>();
  if (doc.contains("kernel")) config.kernel = doc["kernel"];
  if (doc.contains("params")) config.params = doc["params"];
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("tol")) config.tol = doc["tol"].get<double>();
  if (doc.contains("out")) config.out = resolve(config.base_dir, doc["out"].get<std::string>());
  if (doc.contains("csv")) config.csv = resolve(config.base_dir, doc["csv"].get<std::string>());
  return config;
}

KernelMatrix kernel_from_config(const ExperimentConfig& config) {
  const json& k = config.kernel;
  if (!k.is_object()) throw ParseError("configuration is missing a kernel block");

  const int sources = (k.contains("matrix") ? 1 : 0) + (k.contains("matrix_csv") ? 1 : 0) +
                      (k.contains("riesz") ? 1 : 0);
  if (sources > 1) throw ParseError("kernel block must contain exactly one source");

  if (k.contains("matrix")) return KernelMatrix::from_matrix(matrix_from_json(k["matrix"], "kernel matrix"));
  if (k.contains("matrix_csv")) {
    return KernelMatrix::from_matrix(
        read_matrix_csv(resolve(config.base_dir, k["matrix_csv"].get<std::string>())));
  }
  if (k.contains("riesz")) {
    const json& r = k["riesz"];
    Eigen::MatrixXd pts;
    if (r.contains("points")) {
      pts = matrix_from_json(r["points"], "point cloud");
    } else if (r.contains("points_csv")) {
      pts = read_matrix_csv(resolve(config.base_dir, r["points_csv"].get<std::string>()));
    } else {
      throw ParseError("riesz kernel block needs points or points_csv");
    }
    const double alpha = r.contains("alpha") ? r["alpha"].get<double>() : 2.0;
    DiagRule rule = DiagRule::cell_self_energy_auto();
    if (r.contains("diag_rule")) {
      const json& d = r["diag_rule"];
      const std::string kind = d.contains("kind") ? d["kind"].get<std::string>() : "";
      if (kind == "constant") {
        if (!d.contains("value")) throw ParseError("constant diagonal rule needs a value");
        rule = DiagRule::constant(d["value"].get<double>());
      } else if (kind == "cell_self_energy") {
        rule = d.contains("h") ? DiagRule::cell_self_energy(d["h"].get<double>())
                               : DiagRule::cell_self_energy_auto();
      } else {
        throw ParseError("unknown diagonal rule kind '" + kind + "'");
      }
    }
    return KernelMatrix::riesz(Space::from_points(std::move(pts)), alpha, rule);
  }
  throw ParseError("kernel block must contain matrix, matrix_csv or riesz");
}

}  // namespace capsweep
