#ifndef INGO_HARNESS_HPP
#define INGO_HARNESS_HPP

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ingo/benchmarks.hpp"
#include "ingo/discrete.hpp"
#include "ingo/errors.hpp"
#include "ingo/estimators.hpp"
#include "ingo/optimizers.hpp"
#include "ingo/rng.hpp"

namespace ingo {

enum class Algorithm { ingo, ingostep, fast_ingo, framework, es, igo, bernoulli_ingo, categorical_ingo, ga };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ingo: return "ingo";
    case Algorithm::ingostep: return "ingostep";
    case Algorithm::fast_ingo: return "fast_ingo";
    case Algorithm::framework: return "framework";
    case Algorithm::es: return "es";
    case Algorithm::igo: return "igo";
    case Algorithm::bernoulli_ingo: return "bernoulli_ingo";
    case Algorithm::categorical_ingo: return "categorical_ingo";
    case Algorithm::ga: return "ga";
  }
  return "?";
}

inline Algorithm algorithm_from_name(const std::string& name) {
  for (Algorithm a : {Algorithm::ingo, Algorithm::ingostep, Algorithm::fast_ingo, Algorithm::framework,
                      Algorithm::es, Algorithm::igo, Algorithm::bernoulli_ingo, Algorithm::categorical_ingo,
                      Algorithm::ga})
    if (name == algorithm_name(a)) return a;
  raise(Errc::config_invalid, "unknown algorithm '" + name + "'");
}

inline bool algorithm_is_discrete(Algorithm a) {
  return a == Algorithm::bernoulli_ingo || a == Algorithm::categorical_ingo || a == Algorithm::ga;
}

/// N = 2 * floor(3 + floor(3 ln d) / 2); always even.
inline std::size_t default_population_size(std::size_t d) {
  require(d >= 1, Errc::config_invalid, "default_population_size: d >= 1 required");
  double inner = std::floor(3.0 * std::log(static_cast<double>(d)));
  return 2 * static_cast<std::size_t>(std::floor(3.0 + inner / 2.0));
}

inline double default_beta(Algorithm a, std::size_t d) {
  switch (a) {
    case Algorithm::fast_ingo: return 1.0 / std::sqrt(static_cast<double>(d));
    case Algorithm::es: return 0.01;
    default: return 1.0 / static_cast<double>(d);
  }
}

/// A fully seeded experiment description. Zero-valued population / beta mean
/// "auto": resolved deterministically from the dimension.
struct RunConfig {
  Algorithm algorithm = Algorithm::ingo;
  std::string objective = "sphere";
  std::size_t dim = 2;
  std::size_t population = 0;  // 0 = auto
  double beta = 0.0;           // 0 = auto
  std::uint64_t seed = 0;
  std::uint64_t budget = 10000;      // max objective evaluations
  std::uint64_t max_iterations = 0;  // 0 = unlimited
  std::optional<double> target;
  std::optional<Vec> init_mu;
  double init_sigma = 0.5;  // initial standard deviation per coordinate
  unsigned threads = 1;
  std::uint64_t log_every = 1;
  std::optional<double> clip_b;           // framework mode bounds for G_hat
  std::optional<double> clip_gamma_half;  //
  double collapse_tol = 1e-140;  // stop when the smallest variance falls below
  std::size_t categories = 2;    // categorical K
  bool record_timing = false;    // wall_ms stays empty unless set
};

struct ResolvedConfig {
  std::size_t population = 0;
  double beta = 0.0;
};

inline ResolvedConfig resolve_auto(const RunConfig& cfg) {
  ResolvedConfig r;
  r.population = cfg.population == 0 ? default_population_size(cfg.dim) : cfg.population;
  r.beta = cfg.beta == 0.0 ? default_beta(cfg.algorithm, cfg.dim) : cfg.beta;
  return r;
}

/// One per-iteration log record.
struct TraceRow {
  std::uint64_t iteration = 0;
  std::uint64_t evals = 0;
  double best_f_so_far = 0.0;
  double f_at_mean = std::numeric_limits<double>::quiet_NaN();
  double batch_mean_f = 0.0;
  double batch_std_f = 0.0;
  double sigma_eig_min = std::numeric_limits<double>::quiet_NaN();
  double sigma_eig_max = std::numeric_limits<double>::quiet_NaN();
  bool safeguard_activated = false;
  double wall_ms = std::numeric_limits<double>::quiet_NaN();
};

struct Summary {
  std::string algorithm;
  std::string objective;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  double final_best = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t evals = 0;
  std::uint64_t iterations = 0;
  std::string termination;
  std::int64_t evals_to_target = -1;  // -1: target absent or never reached
  std::uint64_t safeguard_count = 0;
};

struct RunResult {
  std::vector<TraceRow> rows;
  Summary summary;
};

namespace detail {

/// Runs fn(i) for i in [0, n) on `threads` workers, writing results into
/// index-order slots so scheduling cannot change the output. Exceptions are
/// collected and re-raised as evaluation_failed with the smallest failing row.
template <typename Fn>
inline Vec evaluate_indexed(std::size_t n, unsigned threads, Fn&& fn) {
  Vec out(n, 0.0);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        out[i] = fn(i);
      } catch (const std::exception& e) {
        raise(Errc::evaluation_failed, "objective failed at row " + std::to_string(i) + ": " + e.what());
      }
    }
    return out;
  }

  std::atomic<std::size_t> cursor{0};
  std::mutex fail_mutex;
  std::vector<std::pair<std::size_t, std::string>> failures;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = fn(i);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(fail_mutex);
        failures.emplace_back(i, e.what());
      } catch (...) {
        std::lock_guard<std::mutex> lock(fail_mutex);
        failures.emplace_back(i, "unknown error");
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(n));
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (!failures.empty()) {
    auto worst = failures.front();
    for (const auto& f : failures)
      if (f.first < worst.first) worst = f;
    raise(Errc::evaluation_failed,
          "objective failed at row " + std::to_string(worst.first) + ": " + worst.second);
  }
  return out;
}

}  // namespace detail

/// Evaluates every candidate row; result order matches row order regardless
/// of thread scheduling.
inline Vec batch_evaluate(const std::function<double(const Vec&)>& objective, const Matrix& candidates,
                          unsigned threads = 1) {
  return detail::evaluate_indexed(candidates.rows(), threads,
                                  [&](std::size_t i) { return objective(candidates.row(i)); });
}

inline Vec batch_evaluate_bits(const std::function<double(const std::vector<std::uint8_t>&)>& objective,
                               const BinaryMatrix& candidates, unsigned threads = 1) {
  return detail::evaluate_indexed(candidates.rows, threads, [&](std::size_t i) {
    std::vector<std::uint8_t> row(candidates.data.begin() + static_cast<std::ptrdiff_t>(i * candidates.cols),
                                  candidates.data.begin() +
                                      static_cast<std::ptrdiff_t>((i + 1) * candidates.cols));
    return objective(row);
  });
}

namespace detail {

struct BatchStats {
  double mean = 0.0;
  double stddev = 0.0;
  double best = 0.0;
};

inline BatchStats batch_stats(const Vec& fitness) {
  BatchStats s;
  double mean = 0.0;
  double best = fitness.front();
  for (double f : fitness) {
    mean += f;
    best = std::min(best, f);
  }
  mean /= static_cast<double>(fitness.size());
  double var = 0.0;
  for (double f : fitness) var += (f - mean) * (f - mean);
  var /= static_cast<double>(fitness.size());
  s.mean = mean;
  s.stddev = std::sqrt(var);
  s.best = best;
  return s;
}

inline void validate_config(const RunConfig& cfg, const ResolvedConfig& res) {
  require(cfg.dim >= 1, Errc::config_invalid, "config: dim must be >= 1");
  require(cfg.budget >= 1, Errc::config_invalid, "config: budget must be >= 1");
  require(cfg.threads >= 1, Errc::config_invalid, "config: threads must be >= 1");
  require(cfg.log_every >= 1, Errc::config_invalid, "config: log_every must be >= 1");
  require(cfg.init_sigma > 0.0, Errc::config_invalid, "config: init_sigma must be positive");
  require(res.beta > 0.0, Errc::config_invalid, "config: beta must be positive");
  require(res.population >= 2, Errc::config_invalid, "config: population must be >= 2");
  require(res.population <= cfg.budget, Errc::config_invalid, "config: budget smaller than one batch");
  if (cfg.algorithm == Algorithm::es)
    require(res.population % 2 == 0, Errc::config_invalid, "config: es needs an even population");
  if (cfg.algorithm == Algorithm::ga)
    require(res.population >= 4 && res.population % 2 == 0, Errc::config_invalid,
            "config: ga needs an even population >= 4");
  if (cfg.algorithm == Algorithm::categorical_ingo)
    require(cfg.categories >= 2, Errc::config_invalid, "config: categorical needs K >= 2");
  if (cfg.clip_b.has_value() != cfg.clip_gamma_half.has_value())
    raise(Errc::config_invalid, "config: clip_b and clip_gamma_half must be set together");
  if (cfg.clip_b && *cfg.clip_b > *cfg.clip_gamma_half)
    raise(Errc::config_invalid, "config: clip_b must not exceed clip_gamma_half");
  if (cfg.init_mu && cfg.init_mu->size() != cfg.dim)
    raise(Errc::config_invalid, "config: init_mu dimension mismatch");
  bool discrete_obj = cfg.objective == "binary_reconstruction";
  require(discrete_obj == algorithm_is_discrete(cfg.algorithm), Errc::config_invalid,
          "config: algorithm and objective domain mismatch (binary_reconstruction is the discrete objective)");
  if (cfg.algorithm == Algorithm::categorical_ingo)
    require(cfg.categories == 2, Errc::config_invalid,
            "config: binary_reconstruction supports categorical K = 2 only");
}

}  // namespace detail

/// Executes ask -> batch_evaluate -> tell until the budget, target, iteration
/// cap or distribution collapse stops it. Fully deterministic given (config,
/// seed); the thread count affects scheduling only.
inline RunResult run_experiment(const RunConfig& cfg) {
  ResolvedConfig res = resolve_auto(cfg);
  detail::validate_config(cfg, res);
  const std::size_t n = res.population;
  const std::size_t d = cfg.dim;

  Rng root(cfg.seed);
  Rng target_rng = root.split(1);  // reconstruction target, before any other draw
  Rng init_rng = root.split(2);

  ObjectiveSpec objective = make_objective(cfg.objective, d, target_rng);

  RunResult result;
  Summary& summary = result.summary;
  summary.algorithm = algorithm_name(cfg.algorithm);
  summary.objective = cfg.objective;
  summary.dim = d;
  summary.seed = cfg.seed;

  // Initial mean mu_1 ~ Uniform[0,1]^d unless overridden; drawn before any
  // candidate sampling.
  Vec mu0;
  if (cfg.init_mu) {
    mu0 = *cfg.init_mu;
  } else {
    mu0.resize(d);
    for (std::size_t j = 0; j < d; ++j) mu0[j] = init_rng.uniform();
  }
  const double var0 = cfg.init_sigma * cfg.init_sigma;

  GaussianSearchState full;
  DiagonalSearchState diag;
  BernoulliState bern;
  CategoricalState cat;
  BinaryMatrix ga_pop;

  switch (cfg.algorithm) {
    case Algorithm::ingo:
    case Algorithm::ingostep:
    case Algorithm::igo:
    case Algorithm::framework:
      full = make_gaussian_state(mu0, Matrix::diag(Vec(d, var0)), res.beta);
      break;
    case Algorithm::fast_ingo:
    case Algorithm::es:
      diag = make_diagonal_state(mu0, Vec(d, var0), res.beta);
      break;
    case Algorithm::bernoulli_ingo:
      bern = make_bernoulli_state(d, res.beta);
      break;
    case Algorithm::categorical_ingo:
      cat = make_categorical_state(d, cfg.categories, res.beta);
      break;
    case Algorithm::ga: {
      ga_pop = BinaryMatrix(n, d);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) ga_pop.at(i, j) = init_rng.uniform() < 0.5 ? 1 : 0;
      break;
    }
  }

  double best = std::numeric_limits<double>::infinity();
  std::uint64_t evals = 0;
  std::uint64_t iteration = 0;
  std::string termination = "budget_exhausted";
  bool have_pending_row = false;
  TraceRow pending_row;
  const auto t_start = std::chrono::steady_clock::now();

  auto current_variance_range = [&](double& lo, double& hi) {
    switch (cfg.algorithm) {
      case Algorithm::ingo:
      case Algorithm::ingostep:
      case Algorithm::igo:
      case Algorithm::framework:
        lo = full.sigma_eig_min;
        hi = full.sigma_eig_max;
        return;
      case Algorithm::fast_ingo:
      case Algorithm::es: {
        double iv_min = diag.inv_var.front(), iv_max = diag.inv_var.front();
        for (double v : diag.inv_var) {
          iv_min = std::min(iv_min, v);
          iv_max = std::max(iv_max, v);
        }
        lo = 1.0 / iv_max;
        hi = 1.0 / iv_min;
        return;
      }
      case Algorithm::bernoulli_ingo: {
        Vec p = bernoulli_probs(bern);
        lo = hi = p.front() * (1.0 - p.front());
        for (double v : p) {
          lo = std::min(lo, v * (1.0 - v));
          hi = std::max(hi, v * (1.0 - v));
        }
        return;
      }
      case Algorithm::categorical_ingo: {
        Matrix p = categorical_probs(cat);
        lo = hi = p(0, 0) * (1.0 - p(0, 0));
        for (double v : p.data()) {
          lo = std::min(lo, v * (1.0 - v));
          hi = std::max(hi, v * (1.0 - v));
        }
        return;
      }
      case Algorithm::ga:
        lo = hi = std::numeric_limits<double>::quiet_NaN();
        return;
    }
  };

  while (true) {
    if (cfg.max_iterations != 0 && iteration >= cfg.max_iterations) {
      termination = "max_iterations";
      break;
    }
    if (evals + n > cfg.budget) {
      termination = "budget_exhausted";
      break;
    }
    ++iteration;
    Rng iter_rng = root.split(1000 + iteration);

    Vec fitness;
    bool safeguard = false;
    double f_mean = std::numeric_limits<double>::quiet_NaN();

    switch (cfg.algorithm) {
      case Algorithm::ingo:
      case Algorithm::ingostep:
      case Algorithm::igo: {
        AskResult asked = ask(full, n, iter_rng);
        fitness = batch_evaluate(objective.eval, asked.candidates, cfg.threads);
        full = cfg.algorithm == Algorithm::ingo ? ingo_tell(full, asked.directions, fitness)
               : cfg.algorithm == Algorithm::ingostep
                   ? ingostep_tell(full, asked.directions, fitness)
                   : igo_baseline_tell(full, asked.directions, fitness);
        safeguard = full.safeguard_activated;
        f_mean = objective.eval(full.mu);
        break;
      }
      case Algorithm::framework: {
        AskResult asked = ask(full, n, iter_rng);
        fitness = batch_evaluate(objective.eval, asked.candidates, cfg.threads);
        ShapedFitness shaped = shape_fitness(fitness);
        if (!shaped.degenerate) {
          GradientEstimate est =
              grad_estimates_batch_with_factor(full.inv_sqrt_sigma, asked.directions, shaped);
          Matrix g_mat = cfg.clip_b ? clip_G(est.g_sigma, *cfg.clip_b, *cfg.clip_gamma_half) : est.g_sigma;
          full = framework_step(full, est.g_mu, g_mat, res.beta);
        } else {
          full.iteration += 1;
        }
        safeguard = full.safeguard_activated && !shaped.degenerate;
        f_mean = objective.eval(full.mu);
        break;
      }
      case Algorithm::fast_ingo:
      case Algorithm::es: {
        DirectionKind kind =
            cfg.algorithm == Algorithm::es ? DirectionKind::antithetic : DirectionKind::iid;
        AskResult asked = ask_diagonal(diag, n, iter_rng, kind);
        fitness = batch_evaluate(objective.eval, asked.candidates, cfg.threads);
        diag = cfg.algorithm == Algorithm::fast_ingo
                   ? fast_ingo_tell(diag, asked.directions, fitness)
                   : es_baseline_tell(diag, asked.directions, fitness, res.beta);
        safeguard = diag.safeguard_activated;
        f_mean = objective.eval(diag.mu);
        break;
      }
      case Algorithm::bernoulli_ingo: {
        BinaryMatrix x = bernoulli_sample(bern, n, iter_rng);
        fitness = batch_evaluate_bits(objective.eval_bits, x, cfg.threads);
        bern = bernoulli_tell(bern, x, fitness);
        safeguard = bern.clamped;
        break;
      }
      case Algorithm::categorical_ingo: {
        IntMatrix x = categorical_sample(cat, n, iter_rng);
        BinaryMatrix bits(n, d);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < d; ++j) bits.at(i, j) = x.at(i, j) == 2 ? 1 : 0;
        fitness = batch_evaluate_bits(objective.eval_bits, bits, cfg.threads);
        cat = categorical_tell(cat, x, fitness);
        safeguard = cat.clamped;
        break;
      }
      case Algorithm::ga: {
        fitness = batch_evaluate_bits(objective.eval_bits, ga_pop, cfg.threads);
        ga_pop = ga_baseline_step(ga_pop, fitness, iter_rng);
        break;
      }
    }

    evals += n;
    detail::BatchStats stats = detail::batch_stats(fitness);
    best = std::min(best, stats.best);
    if (cfg.target && best <= *cfg.target && summary.evals_to_target < 0)
      summary.evals_to_target = static_cast<std::int64_t>(evals);
    if (safeguard) summary.safeguard_count += 1;

    TraceRow row;
    row.iteration = iteration;
    row.evals = evals;
    row.best_f_so_far = best;
    row.f_at_mean = f_mean;
    row.batch_mean_f = stats.mean;
    row.batch_std_f = stats.stddev;
    current_variance_range(row.sigma_eig_min, row.sigma_eig_max);
    row.safeguard_activated = safeguard;
    if (cfg.record_timing) {
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start).count();
    }
    if ((iteration - 1) % cfg.log_every == 0) {
      result.rows.push_back(row);
      have_pending_row = false;
    } else {
      pending_row = row;  // the last iteration is always logged, even when thinning
      have_pending_row = true;
    }

    if (cfg.target && best <= *cfg.target) {
      termination = "target_reached";
      break;
    }
    if (!algorithm_is_discrete(cfg.algorithm)) {
      double lo = 0.0, hi = 0.0;
      current_variance_range(lo, hi);
      if (lo < cfg.collapse_tol) {
        termination = "collapse";
        break;
      }
    }
  }
  if (have_pending_row) result.rows.push_back(pending_row);

  summary.final_best = best;
  summary.evals = evals;
  summary.iterations = iteration;
  summary.termination = termination;
  return result;
}

// ---------------------------------------------------------------------------
// CSV input/output. Comma separated, '.' decimal, header row mandatory.
// Doubles are printed with std::to_chars (shortest round-trip form), so a
// parse-write cycle reproduces the file byte for byte.
// ---------------------------------------------------------------------------

inline const char* trace_header() {
  return "iteration,evals,best_f_so_far,f_at_mean,batch_mean_f,batch_std_f,sigma_eig_min,sigma_eig_max,"
         "safeguard_activated,wall_ms";
}

inline std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string trace_line(const TraceRow& row) {
  std::string out;
  out += std::to_string(row.iteration);
  out += ',';
  out += std::to_string(row.evals);
  out += ',';
  out += format_double(row.best_f_so_far);
  out += ',';
  out += format_double(row.f_at_mean);
  out += ',';
  out += format_double(row.batch_mean_f);
  out += ',';
  out += format_double(row.batch_std_f);
  out += ',';
  out += format_double(row.sigma_eig_min);
  out += ',';
  out += format_double(row.sigma_eig_max);
  out += ',';
  out += row.safeguard_activated ? "1" : "0";
  out += ',';
  out += format_double(row.wall_ms);
  return out;
}

inline void write_trace(const std::vector<TraceRow>& rows, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  require(file.good(), Errc::io_failure, "write_trace: cannot open '" + path + "'");
  file << trace_header() << '\n';
  for (const TraceRow& row : rows) file << trace_line(row) << '\n';
  require(file.good(), Errc::io_failure, "write_trace: write failed for '" + path + "'");
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_field(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  require(r.ec == std::errc{} && r.ptr == s.data() + s.size(), Errc::io_failure,
          "trace parse: bad number '" + s + "'");
  return v;
}

inline std::vector<TraceRow> parse_trace(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  require(file.good(), Errc::io_failure, "parse_trace: cannot open '" + path + "'");
  std::string line;
  require(static_cast<bool>(std::getline(file, line)), Errc::io_failure, "parse_trace: missing header");
  std::vector<TraceRow> rows;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f = split_csv(line);
    require(f.size() == 10, Errc::io_failure, "parse_trace: wrong column count");
    TraceRow row;
    row.iteration = static_cast<std::uint64_t>(parse_field(f[0]));
    row.evals = static_cast<std::uint64_t>(parse_field(f[1]));
    row.best_f_so_far = parse_field(f[2]);
    row.f_at_mean = parse_field(f[3]);
    row.batch_mean_f = parse_field(f[4]);
    row.batch_std_f = parse_field(f[5]);
    row.sigma_eig_min = parse_field(f[6]);
    row.sigma_eig_max = parse_field(f[7]);
    row.safeguard_activated = f[8] == "1";
    row.wall_ms = parse_field(f[9]);
    rows.push_back(row);
  }
  return rows;
}

/// Canonical trace file name used by `sweep` and parsed back by `table`.
inline std::string trace_basename(const std::string& algorithm, const std::string& objective,
                                  std::size_t dim, std::uint64_t seed) {
  return algorithm + "__" + objective + "__d" + std::to_string(dim) + "__s" + std::to_string(seed) + ".csv";
}

// ---------------------------------------------------------------------------
// Aggregation.
// ---------------------------------------------------------------------------

/// Median / interquartile range per (algorithm, objective, dim) group.
struct AggregateRow {
  std::string algorithm;
  std::string objective;
  std::size_t dim = 0;
  std::size_t runs = 0;
  double best_median = std::numeric_limits<double>::quiet_NaN();
  double best_q25 = std::numeric_limits<double>::quiet_NaN();
  double best_q75 = std::numeric_limits<double>::quiet_NaN();
  std::size_t reached_target = 0;
  double evals_to_target_median = std::numeric_limits<double>::quiet_NaN();
  double evals_to_target_q25 = std::numeric_limits<double>::quiet_NaN();
  double evals_to_target_q75 = std::numeric_limits<double>::quiet_NaN();
};

/// Linear-interpolation quantile at q (n-1) over sorted values; q = 0.5 gives
/// the middle-pair average for even n.
inline double quantile_sorted(const Vec& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  double pos = q * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

inline double median(Vec values) {
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, 0.5);
}

inline std::vector<AggregateRow> summarize(const std::vector<Summary>& summaries) {
  std::map<std::tuple<std::string, std::string, std::size_t>, std::vector<const Summary*>> groups;
  for (const Summary& s : summaries) groups[{s.algorithm, s.objective, s.dim}].push_back(&s);

  std::vector<AggregateRow> out;
  for (const auto& [key, members] : groups) {
    AggregateRow row;
    row.algorithm = std::get<0>(key);
    row.objective = std::get<1>(key);
    row.dim = std::get<2>(key);
    row.runs = members.size();

    Vec bests;
    Vec to_target;
    for (const Summary* s : members) {
      bests.push_back(s->final_best);
      if (s->evals_to_target >= 0) to_target.push_back(static_cast<double>(s->evals_to_target));
    }
    std::sort(bests.begin(), bests.end());
    row.best_median = quantile_sorted(bests, 0.5);
    row.best_q25 = quantile_sorted(bests, 0.25);
    row.best_q75 = quantile_sorted(bests, 0.75);
    row.reached_target = to_target.size();
    if (!to_target.empty()) {
      std::sort(to_target.begin(), to_target.end());
      row.evals_to_target_median = quantile_sorted(to_target, 0.5);
      row.evals_to_target_q25 = quantile_sorted(to_target, 0.25);
      row.evals_to_target_q75 = quantile_sorted(to_target, 0.75);
    }
    out.push_back(row);
  }
  return out;
}

inline void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  require(file.good(), Errc::io_failure, "write_aggregate_csv: cannot open '" + path + "'");
  file << "algorithm,objective,dim,runs,best_f_median,best_f_q25,best_f_q75,reached_target,"
          "evals_to_target_median,evals_to_target_q25,evals_to_target_q75\n";
  for (const AggregateRow& r : rows) {
    file << r.algorithm << ',' << r.objective << ',' << r.dim << ',' << r.runs << ','
         << format_double(r.best_median) << ',' << format_double(r.best_q25) << ','
         << format_double(r.best_q75) << ',' << r.reached_target << ','
         << format_double(r.evals_to_target_median) << ',' << format_double(r.evals_to_target_q25) << ','
         << format_double(r.evals_to_target_q75) << '\n';
  }
  require(file.good(), Errc::io_failure, "write_aggregate_csv: write failed");
}

inline void write_summaries_csv(const std::vector<Summary>& summaries, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  require(file.good(), Errc::io_failure, "write_summaries_csv: cannot open '" + path + "'");
  file << "algorithm,objective,dim,seed,final_best,evals,iterations,termination,evals_to_target,"
          "safeguard_count\n";
  for (const Summary& s : summaries) {
    file << s.algorithm << ',' << s.objective << ',' << s.dim << ',' << s.seed << ','
         << format_double(s.final_best) << ',' << s.evals << ',' << s.iterations << ',' << s.termination
         << ',' << s.evals_to_target << ',' << s.safeguard_count << '\n';
  }
  require(file.good(), Errc::io_failure, "write_summaries_csv: write failed");
}

}  // namespace ingo

#endif  // INGO_HARNESS_HPP
