#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capsweep/capacity.hpp"
#include "capsweep/errors.hpp"
#include "capsweep/io.hpp"
#include "capsweep/kernel.hpp"
#include "capsweep/principles.hpp"
#include "capsweep/sweep.hpp"
#include "capsweep/types.hpp"
#include "capsweep/workbench.hpp"

namespace {

using capsweep::json;

struct CliOptions {
  std::string task;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::string> out;
  std::optional<std::string> csv;
};

/// Config task params merged with command-line overrides.
struct RunContext {
  capsweep::ExperimentConfig config;
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

capsweep::IndexSet set_from_params(const json& params, const char* key, int n) {
  if (!params.contains(key)) {
    throw capsweep::PreconditionViolated(std::string("missing task parameter '") + key + "'");
  }
  const json& spec = params.at(key);
  if (!spec.is_array()) {
    throw capsweep::ParseError(std::string("task parameter '") + key +
                               "' must be an array of site indices");
  }
  std::vector<int> sites;
  for (const auto& v : spec) {
    if (!v.is_number_integer()) {
      throw capsweep::ParseError(std::string("task parameter '") + key +
                                 "' must hold integers");
    }
    sites.push_back(v.get<int>());
  }
  capsweep::IndexSet a(sites);
  a.validate(n);
  return a;
}

void write_outputs(const RunContext& ctx, const json& report,
                   const std::vector<std::string>& csv_lines) {
  const std::string text = report.dump(2) + "\n";
  if (ctx.config.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    capsweep::atomic_write_text(ctx.config.out, text);
  }
  if (!ctx.config.csv.empty()) {
    std::string body;
    for (const auto& line : csv_lines) body += line;
    capsweep::atomic_write_text(ctx.config.csv, body);
  }
}

std::vector<std::string> measure_csv(const capsweep::Measure& mu) {
  std::vector<std::string> lines;
  lines.push_back(capsweep::csv_line({"site", "weight"}));
  for (int i = 0; i < mu.size(); ++i) {
    lines.push_back(capsweep::csv_line({std::to_string(i), capsweep::format_double(mu[i])}));
  }
  return lines;
}

int run_capacity(const RunContext& ctx) {
  const capsweep::KernelMatrix kernel = kernel_from_config(ctx.config);
  const json& params = ctx.config.params;
  const bool has_f = params.contains("f");
  const bool has_set = params.contains("set");
  if (has_f == has_set) {
    throw capsweep::PreconditionViolated(
        "capacity task needs exactly one of 'f' (field) or 'set' (site list)");
  }

  capsweep::CapacityReport rep;
  if (has_set) {
    rep = check_duality(kernel, set_from_params(params, "set", kernel.size()), ctx.tol);
  } else {
    const json& fspec = params.at("f");
    if (!fspec.is_array() || (int)fspec.size() != kernel.size()) {
      throw capsweep::DimensionMismatch("task parameter 'f' must be an array of length n");
    }
    Eigen::VectorXd values(kernel.size());
    for (int i = 0; i < kernel.size(); ++i) values[i] = fspec.at(i).get<double>();
    rep = check_duality(kernel, capsweep::PotentialField(values), ctx.tol);
  }

  json report;
  report["task"] = "capacity";
  report["report"] = to_json(rep);

  std::vector<std::string> csv;
  csv.push_back(capsweep::csv_line({"c", "gamma", "duality_gap", "gcapa"}));
  csv.push_back(capsweep::csv_line({capsweep::format_double(rep.c),
                                    capsweep::format_double(rep.gamma),
                                    capsweep::format_double(rep.duality_gap),
                                    rep.gcapa ? capsweep::format_double(*rep.gcapa) : ""}));
  write_outputs(ctx, report, csv);
  return 0;
}

int run_equilibrium(const RunContext& ctx) {
  const capsweep::KernelMatrix kernel = kernel_from_config(ctx.config);
  const capsweep::IndexSet a = set_from_params(ctx.config.params, "set", kernel.size());
  const capsweep::SweepReport rep = equilibrium(kernel, a, ctx.tol);

  json report;
  report["task"] = "equilibrium";
  report["report"] = to_json(rep);
  write_outputs(ctx, report, measure_csv(rep.swept));
  return 0;
}

int run_sweep(const RunContext& ctx) {
  const capsweep::KernelMatrix kernel = kernel_from_config(ctx.config);
  const json& params = ctx.config.params;
  const capsweep::IndexSet a = set_from_params(params, "set", kernel.size());
  if (!params.contains("omega")) {
    throw capsweep::PreconditionViolated("sweep task needs an 'omega' measure");
  }
  const capsweep::Measure omega =
      capsweep::measure_from_json(params.at("omega"), kernel.size());
  const capsweep::SweepReport rep = balayage(kernel, omega, a, ctx.tol);

  json report;
  report["task"] = "sweep";
  report["report"] = to_json(rep);
  write_outputs(ctx, report, measure_csv(rep.swept));
  return 0;
}

int run_principles(const RunContext& ctx) {
  const capsweep::KernelMatrix kernel = kernel_from_config(ctx.config);
  const json& params = ctx.config.params;
  const int trials = params.value("trials", 200);
  std::string method_name = params.value("method", std::string());
  if (method_name.empty()) {
    method_name = kernel.size() <= 12 ? "exhaustive" : "randomized";
  }
  capsweep::SearchMethod method;
  if (method_name == "exhaustive") {
    method = capsweep::SearchMethod::Exhaustive;
  } else if (method_name == "randomized") {
    method = capsweep::SearchMethod::Randomized;
  } else {
    throw capsweep::ParseError("method must be 'exhaustive' or 'randomized'");
  }

  const capsweep::PositiveDefiniteCheck pd = check_positive_definite(kernel);
  const capsweep::PrincipleReport dil = dilation_constant(kernel, method, trials, ctx.seed);
  const capsweep::PrincipleReport dom =
      search_domination(kernel, method, trials, ctx.tol, ctx.seed);

  json pd_block;
  pd_block["psd"] = pd.psd;
  pd_block["strict"] = pd.strict;
  pd_block["min_eigenvalue"] = pd.min_eigenvalue;
  {
    json w = json::array();
    for (int i = 0; i < pd.witness.size(); ++i) w.push_back(pd.witness[i]);
    pd_block["witness"] = w;
  }

  json report;
  report["task"] = "principles";
  report["report"]["positive_definite"] = pd_block;
  report["report"]["maximum"] = to_json(dil);
  report["report"]["domination"] = to_json(dom);

  std::vector<std::string> csv;
  csv.push_back(capsweep::csv_line({"check", "holds", "k"}));
  csv.push_back(capsweep::csv_line({"positive_definite", pd.psd ? "1" : "0", ""}));
  csv.push_back(capsweep::csv_line(
      {"maximum", dil.holds ? "1" : "0", capsweep::format_double(dil.k)}));
  csv.push_back(capsweep::csv_line({"domination", dom.holds ? "1" : "0", ""}));
  write_outputs(ctx, report, csv);
  return 0;
}

int run_verify(const RunContext& ctx) {
  const capsweep::KernelMatrix kernel = kernel_from_config(ctx.config);
  const int trials = ctx.config.params.value("trials", 100);
  const auto checks = run_verification(kernel, trials, ctx.seed, ctx.tol);

  bool all_pass = true;
  json rows = json::array();
  std::vector<std::string> csv;
  csv.push_back(capsweep::csv_line({"check", "pass"}));
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    json row;
    row["name"] = c.name;
    row["pass"] = c.pass;
    row["detail"] = c.detail;
    rows.push_back(row);
    csv.push_back(capsweep::csv_line({c.name, c.pass ? "1" : "0"}));
  }

  json report;
  report["task"] = "verify";
  report["report"]["checks"] = rows;
  report["report"]["all_pass"] = all_pass;
  write_outputs(ctx, report, csv);
  return all_pass ? 0 : 3;
}

int run_study(const RunContext& ctx) {
  const json& params = ctx.config.params;
  capsweep::StudyParams sp;
  sp.radius = params.value("radius", sp.radius);
  sp.alpha = params.value("alpha", sp.alpha);
  sp.exterior_distance = params.value("exterior_distance", sp.exterior_distance);
  if (params.contains("point_counts")) {
    sp.point_counts.clear();
    for (const auto& v : params.at("point_counts")) sp.point_counts.push_back(v.get<int>());
  }
  const auto rows = run_sphere_study(sp);

  // Wall times vary run to run, so they go to the CSV table only and the
  // JSON report stays byte-identical across reruns.
  json jrows = json::array();
  std::vector<std::string> csv;
  csv.push_back(
      capsweep::csv_line({"n", "capacity_sq", "swept_mass", "residual_a", "residual_b",
                          "runtime_ms"}));
  for (const auto& row : rows) {
    json jrow;
    jrow["n"] = row.n;
    jrow["capacity_sq"] = row.capacity_sq;
    jrow["swept_mass"] = row.swept_mass;
    jrow["residual_a"] = row.residual_a;
    jrow["residual_b"] = row.residual_b;
    jrows.push_back(jrow);
    csv.push_back(capsweep::csv_line(
        {std::to_string(row.n), capsweep::format_double(row.capacity_sq),
         capsweep::format_double(row.swept_mass), capsweep::format_double(row.residual_a),
         capsweep::format_double(row.residual_b), capsweep::format_double(row.runtime_ms)}));
  }

  json report;
  report["task"] = "study";
  report["report"]["rows"] = jrows;
  write_outputs(ctx, report, csv);
  return 0;
}

int run(const CliOptions& opts) {
  RunContext ctx;
  if (!opts.config_path.empty()) {
    ctx.config = capsweep::load_config(opts.config_path);
  }
  if (!opts.task.empty()) ctx.config.task = opts.task;
  if (ctx.config.task.empty()) {
    std::fprintf(stderr, "no task: give a subcommand or a config with a \"task\" field\n");
    return 1;
  }
  if (opts.seed) ctx.config.seed = *opts.seed;
  if (opts.tol) ctx.config.tol = *opts.tol;
  if (opts.out) ctx.config.out = *opts.out;
  if (opts.csv) ctx.config.csv = *opts.csv;
  ctx.seed = ctx.config.seed;
  ctx.tol = ctx.config.tol.value_or(1e-9);

  if (ctx.config.task == "capacity") return run_capacity(ctx);
  if (ctx.config.task == "equilibrium") return run_equilibrium(ctx);
  if (ctx.config.task == "sweep") return run_sweep(ctx);
  if (ctx.config.task == "principles") return run_principles(ctx);
  if (ctx.config.task == "verify") return run_verify(ctx);
  if (ctx.config.task == "study") return run_study(ctx);
  std::fprintf(stderr, "unknown task '%s'\n", ctx.config.task.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-space capacity and sweeping workbench"};
  app.require_subcommand(0, 1);

  CliOptions opts;
  app.add_option("--config", opts.config_path, "experiment description (JSON)");
  app.add_option("--seed", opts.seed, "override the config seed");
  app.add_option("--tol", opts.tol, "override the solver tolerance");
  app.add_option("--out", opts.out, "JSON report path (default: stdout)");
  app.add_option("--csv", opts.csv, "CSV table path");

  app.add_subcommand("capacity", "primal and dual capacity of a field or a set")->fallthrough();
  app.add_subcommand("equilibrium", "equilibrium measure of a set")->fallthrough();
  app.add_subcommand("sweep", "balayage of a measure onto a set")->fallthrough();
  app.add_subcommand("principles", "definiteness, maximum and domination checks")->fallthrough();
  app.add_subcommand("verify", "randomized invariant suite; exit 3 on failure")->fallthrough();
  app.add_subcommand("study", "sphere lattice refinement table")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  for (auto* sub : app.get_subcommands()) opts.task = sub->get_name();

  try {
    return run(opts);
  } catch (const capsweep::SolverFailure& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 2;
  } catch (const capsweep::LpFailure& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 2;
  } catch (const capsweep::InternalError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 2;
  } catch (const capsweep::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
