// Command-line front end: single runs, JSON-driven sweeps, and aggregation of
// trace files into a summary table.

#include <glob.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ingo/harness.hpp"
#include "ingo/sweep.hpp"

namespace {

int errc_to_exit_code(ingo::Errc code) {
  switch (code) {
    case ingo::Errc::config_invalid:
    case ingo::Errc::unknown_function:
    case ingo::Errc::dim_too_small:
    case ingo::Errc::bad_bounds:
      return 2;
    case ingo::Errc::evaluation_failed:
      return 3;
    default:
      return 1;
  }
}

double parse_auto_double(const std::string& s, const char* what) {
  if (s == "auto") return 0.0;
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    ingo::raise(ingo::Errc::config_invalid, std::string(what) + " must be a number or 'auto'");
  }
}

std::size_t parse_auto_count(const std::string& s, const char* what) {
  if (s == "auto") return 0;
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    ingo::raise(ingo::Errc::config_invalid, std::string(what) + " must be a count or 'auto'");
  }
}

std::vector<std::string> glob_paths(const std::string& pattern) {
  glob_t g{};
  int rc = glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::string> out;
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH)
    ingo::raise(ingo::Errc::io_failure, "glob failed for pattern '" + pattern + "'");
  return out;
}

/// Reverses trace_basename: <algo>__<fn>__d<dim>__s<seed>.csv.
bool parse_trace_name(const std::string& path, ingo::Summary& out) {
  std::string stem = std::filesystem::path(path).stem().string();
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = stem.find("__", pos);
    if (next == std::string::npos) {
      parts.push_back(stem.substr(pos));
      break;
    }
    parts.push_back(stem.substr(pos, next - pos));
    pos = next + 2;
  }
  if (parts.size() != 4 || parts[2].size() < 2 || parts[3].size() < 2) return false;
  if (parts[2][0] != 'd' || parts[3][0] != 's') return false;
  try {
    out.algorithm = parts[0];
    out.objective = parts[1];
    out.dim = static_cast<std::size_t>(std::stoul(parts[2].substr(1)));
    out.seed = std::stoull(parts[3].substr(1));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

int cmd_run(const ingo::RunConfig& cfg, const std::string& out_path) {
  ingo::RunResult result = ingo::run_experiment(cfg);
  ingo::write_trace(result.rows, out_path);
  std::printf("algorithm=%s fn=%s dim=%zu seed=%llu final_best=%.6e evals=%llu iterations=%llu "
              "termination=%s\n",
              result.summary.algorithm.c_str(), result.summary.objective.c_str(), result.summary.dim,
              static_cast<unsigned long long>(result.summary.seed), result.summary.final_best,
              static_cast<unsigned long long>(result.summary.evals),
              static_cast<unsigned long long>(result.summary.iterations),
              result.summary.termination.c_str());
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
  std::vector<ingo::RunConfig> configs = ingo::parse_sweep_config(config_path);
  std::filesystem::create_directories(out_dir);
  std::vector<ingo::Summary> summaries;
  for (const ingo::RunConfig& cfg : configs) {
    ingo::RunResult result = ingo::run_experiment(cfg);
    std::string name = ingo::trace_basename(result.summary.algorithm, result.summary.objective,
                                            result.summary.dim, result.summary.seed);
    ingo::write_trace(result.rows, (std::filesystem::path(out_dir) / name).string());
    std::printf("%s: final_best=%.6e evals=%llu termination=%s\n", name.c_str(),
                result.summary.final_best, static_cast<unsigned long long>(result.summary.evals),
                result.summary.termination.c_str());
    summaries.push_back(result.summary);
  }
  ingo::write_summaries_csv(summaries, (std::filesystem::path(out_dir) / "summaries.csv").string());
  std::vector<ingo::AggregateRow> agg = ingo::summarize(summaries);
  ingo::write_aggregate_csv(agg, (std::filesystem::path(out_dir) / "aggregate.csv").string());
  std::printf("wrote %zu traces, summaries.csv and aggregate.csv under %s\n", summaries.size(),
              out_dir.c_str());
  return 0;
}

int cmd_table(const std::string& pattern, const std::string& out_path, std::optional<double> target) {
  std::vector<std::string> paths = glob_paths(pattern);
  ingo::require(!paths.empty(), ingo::Errc::config_invalid,
                "table: no trace files match '" + pattern + "'");
  std::vector<ingo::Summary> summaries;
  for (const std::string& path : paths) {
    ingo::Summary s;
    if (!parse_trace_name(path, s)) {
      s.algorithm = "unknown";
      s.objective = std::filesystem::path(path).stem().string();
      s.dim = 0;
      s.seed = 0;
    }
    std::vector<ingo::TraceRow> rows = ingo::parse_trace(path);
    if (rows.empty()) continue;
    s.final_best = rows.back().best_f_so_far;
    s.evals = rows.back().evals;
    s.iterations = rows.back().iteration;
    s.termination = "unknown";
    if (target) {
      for (const ingo::TraceRow& row : rows)
        if (row.best_f_so_far <= *target) {
          s.evals_to_target = static_cast<std::int64_t>(row.evals);
          break;
        }
    }
    summaries.push_back(std::move(s));
  }
  ingo::write_aggregate_csv(ingo::summarize(summaries), out_path);
  std::printf("aggregated %zu traces into %s\n", summaries.size(), out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Implicit natural gradient black-box optimization benchmark harness"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute one optimization run and write its trace CSV");
  std::string algo = "ingo", fn = "sphere", beta_s = "auto", pop_s = "auto", out_path = "trace.csv";
  std::size_t dim = 2, categories = 2;
  std::uint64_t seed = 0, budget = 10000, log_every = 1, max_iterations = 0;
  unsigned threads = 1;
  double target = std::numeric_limits<double>::quiet_NaN();
  double init_sigma = 0.5;
  double clip_b = std::numeric_limits<double>::quiet_NaN();
  double clip_gamma_half = std::numeric_limits<double>::quiet_NaN();
  bool timing = false;
  run->add_option("--algo", algo, "ingo|ingostep|fast_ingo|framework|es|igo|bernoulli_ingo|categorical_ingo|ga");
  run->add_option("--fn", fn, "objective name");
  run->add_option("--dim", dim, "search dimension")->required();
  run->add_option("--seed", seed, "run seed");
  run->add_option("--budget", budget, "max objective evaluations");
  run->add_option("--beta", beta_s, "step size or 'auto'");
  run->add_option("--pop", pop_s, "samples per iteration or 'auto'");
  run->add_option("--target", target, "stop when best fitness reaches this value");
  run->add_option("--threads", threads, "evaluation worker threads");
  run->add_option("--out", out_path, "trace CSV path")->required();
  run->add_option("--log-every", log_every, "trace every k-th iteration");
  run->add_option("--max-iterations", max_iterations, "iteration cap (0 = none)");
  run->add_option("--init-sigma", init_sigma, "initial standard deviation");
  run->add_option("--K", categories, "number of categories (categorical_ingo)");
  run->add_option("--clip-b", clip_b, "framework mode: lower eigenvalue bound for G");
  run->add_option("--clip-gamma-half", clip_gamma_half, "framework mode: upper eigenvalue bound for G");
  run->add_flag("--timing", timing, "record wall_ms in the trace (breaks byte reproducibility)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run the cross-product of a JSON config");
  std::string sweep_config, sweep_out = "sweep_out";
  sweep->add_option("--config", sweep_config, "JSON sweep document")->required();
  sweep->add_option("--out-dir", sweep_out, "output directory for traces and summaries");

  // table
  auto* table = app.add_subcommand("table", "Aggregate trace CSVs into a median/IQR table");
  std::string table_in, table_out = "table.csv";
  double table_target = std::numeric_limits<double>::quiet_NaN();
  table->add_option("--in", table_in, "glob pattern of trace CSVs")->required();
  table->add_option("--out", table_out, "aggregate CSV path")->required();
  table->add_option("--target", table_target, "fitness threshold for evals-to-target");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // malformed invocation is a config error
  }

  try {
    if (run->parsed()) {
      ingo::RunConfig cfg;
      cfg.algorithm = ingo::algorithm_from_name(algo);
      cfg.objective = fn;
      cfg.dim = dim;
      cfg.seed = seed;
      cfg.budget = budget;
      cfg.beta = parse_auto_double(beta_s, "--beta");
      cfg.population = parse_auto_count(pop_s, "--pop");
      if (!std::isnan(target)) cfg.target = target;
      cfg.threads = threads;
      cfg.log_every = log_every;
      cfg.max_iterations = max_iterations;
      cfg.init_sigma = init_sigma;
      cfg.categories = categories;
      if (!std::isnan(clip_b)) cfg.clip_b = clip_b;
      if (!std::isnan(clip_gamma_half)) cfg.clip_gamma_half = clip_gamma_half;
      cfg.record_timing = timing;
      return cmd_run(cfg, out_path);
    }
    if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out);
    if (table->parsed())
      return cmd_table(table_in, table_out,
                       std::isnan(table_target) ? std::nullopt : std::optional<double>(table_target));
  } catch (const ingo::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return errc_to_exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
