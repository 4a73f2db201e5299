#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "ingo/harness.hpp"

using namespace ingo;

namespace {

std::string read_all(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("default population size follows the floor formula") {
  CHECK(default_population_size(100) == 18);
  CHECK(default_population_size(1) == 6);
  CHECK(default_population_size(20) == 14);
  for (std::size_t d = 1; d <= 200; ++d) CHECK(default_population_size(d) % 2 == 0);
}

TEST_CASE("auto hyperparameters resolve per algorithm") {
  RunConfig cfg;
  cfg.dim = 16;
  cfg.algorithm = Algorithm::ingo;
  CHECK(resolve_auto(cfg).beta == doctest::Approx(1.0 / 16.0));
  cfg.algorithm = Algorithm::ingostep;
  CHECK(resolve_auto(cfg).beta == doctest::Approx(1.0 / 16.0));
  cfg.algorithm = Algorithm::igo;
  CHECK(resolve_auto(cfg).beta == doctest::Approx(1.0 / 16.0));
  cfg.algorithm = Algorithm::framework;
  CHECK(resolve_auto(cfg).beta == doctest::Approx(1.0 / 16.0));
  cfg.algorithm = Algorithm::fast_ingo;
  CHECK(resolve_auto(cfg).beta == doctest::Approx(0.25));
  cfg.algorithm = Algorithm::es;
  CHECK(resolve_auto(cfg).beta == doctest::Approx(0.01));
  cfg.algorithm = Algorithm::bernoulli_ingo;
  CHECK(resolve_auto(cfg).beta == doctest::Approx(1.0 / 16.0));
  CHECK(resolve_auto(cfg).population == default_population_size(16));
  cfg.population = 24;
  cfg.beta = 0.5;
  CHECK(resolve_auto(cfg).population == 24);
  CHECK(resolve_auto(cfg).beta == 0.5);
}

TEST_CASE("batch_evaluate preserves candidate order across thread counts") {
  auto fn = [](const Vec& x) { return eval_benchmark("ellipsoid", x); };
  Matrix x(2, 2);
  x.set_row(0, {0.0, 0.0});
  x.set_row(1, {1.0, 1.0});
  Vec f = batch_evaluate(fn, x, 1);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(1.0 + 1e6).epsilon(1e-12));

  Rng rng(5);
  Matrix big(100, 4);
  for (double& v : big.data()) v = rng.gaussian();
  auto sphere = [](const Vec& v) { return dot(v, v); };
  Vec serial = batch_evaluate(sphere, big, 1);
  Vec parallel = batch_evaluate(sphere, big, 8);
  CHECK(serial == parallel);

  Matrix one(1, 4, 0.5);
  CHECK(batch_evaluate(sphere, one, 4).size() == 1);
}

TEST_CASE("batch_evaluate reports the smallest failing row") {
  auto fn = [](const Vec& x) -> double {
    if (x[0] > 2.5) throw std::runtime_error("boom");
    return x[0];
  };
  Matrix x(6, 1);
  for (std::size_t i = 0; i < 6; ++i) x(i, 0) = static_cast<double>(i);
  for (unsigned threads : {1u, 4u}) {
    try {
      batch_evaluate(fn, x, threads);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::evaluation_failed);
      CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
  }
}

TEST_CASE("a budget of exactly one batch yields a single trace row") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::ingo;
  cfg.objective = "sphere";
  cfg.dim = 2;
  cfg.budget = default_population_size(2);
  RunResult r = run_experiment(cfg);
  CHECK(r.rows.size() == 1);
  CHECK(r.summary.iterations == 1);
  CHECK(r.summary.evals == cfg.budget);
}

TEST_CASE("trace invariants: monotone best, strictly increasing evals, exact accounting") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::ingostep;
  cfg.objective = "levy";
  cfg.dim = 4;
  cfg.seed = 3;
  cfg.budget = 3000;
  RunResult r = run_experiment(cfg);
  const std::size_t n = resolve_auto(cfg).population;
  CHECK(r.summary.evals == r.summary.iterations * n);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].best_f_so_far <= r.rows[i - 1].best_f_so_far);
    CHECK(r.rows[i].evals > r.rows[i - 1].evals);
  }
}

TEST_CASE("identical config and seed reproduce the trace byte for byte") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::fast_ingo;
  cfg.objective = "ellipsoid";
  cfg.dim = 6;
  cfg.seed = 11;
  cfg.budget = 5000;
  RunResult a = run_experiment(cfg);
  RunResult b = run_experiment(cfg);
  std::string pa = temp_path("ingo_determinism_a.csv");
  std::string pb = temp_path("ingo_determinism_b.csv");
  write_trace(a.rows, pa);
  write_trace(b.rows, pb);
  CHECK(read_all(pa) == read_all(pb));
  std::filesystem::remove(pa);
  std::filesystem::remove(pb);
}

TEST_CASE("the sphere end-to-end run converges to high precision") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::ingo;
  cfg.objective = "sphere";
  cfg.dim = 5;
  cfg.seed = 0;
  cfg.budget = 50000;
  RunResult r = run_experiment(cfg);
  CHECK(r.summary.final_best < 1e-8);
}

TEST_CASE("log_every thins the trace but keeps the last iteration") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::es;
  cfg.objective = "sphere";
  cfg.dim = 3;
  cfg.budget = 1000;
  cfg.log_every = 10;
  RunResult r = run_experiment(cfg);
  CHECK(r.rows.front().iteration == 1);
  CHECK(r.rows.back().iteration == r.summary.iterations);
  CHECK(r.rows.size() < r.summary.iterations);
}

TEST_CASE("invalid configurations are rejected") {
  RunConfig cfg;
  cfg.dim = 0;
  CHECK_THROWS_AS(run_experiment(cfg), Error);

  RunConfig mismatch;
  mismatch.algorithm = Algorithm::bernoulli_ingo;
  mismatch.objective = "sphere";
  mismatch.dim = 4;
  try {
    run_experiment(mismatch);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config_invalid);
  }

  RunConfig odd_es;
  odd_es.algorithm = Algorithm::es;
  odd_es.objective = "sphere";
  odd_es.dim = 4;
  odd_es.population = 7;
  try {
    run_experiment(odd_es);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config_invalid);
  }

  RunConfig clip_half;
  clip_half.algorithm = Algorithm::framework;
  clip_half.objective = "sphere";
  clip_half.dim = 3;
  clip_half.clip_b = 0.5;
  try {
    run_experiment(clip_half);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config_invalid);
  }
}

TEST_CASE("trace files round-trip exactly") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::ingo;
  cfg.objective = "sphere";
  cfg.dim = 3;
  cfg.budget = 400;
  RunResult r = run_experiment(cfg);
  std::string path = temp_path("ingo_roundtrip.csv");
  write_trace(r.rows, path);
  std::vector<TraceRow> parsed = parse_trace(path);
  REQUIRE(parsed.size() == r.rows.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) CHECK(trace_line(parsed[i]) == trace_line(r.rows[i]));

  write_trace({}, path);  // empty runs still produce the mandatory header
  std::string content = read_all(path);
  CHECK(content == std::string(trace_header()) + "\n");
  CHECK(parse_trace(path).empty());
  std::filesystem::remove(path);
}

TEST_CASE("parse_trace rejects missing files") {
  try {
    parse_trace(temp_path("ingo_no_such_file.csv"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io_failure);
  }
}

TEST_CASE("summarize computes the middle-pair median over 20 summaries") {
  std::vector<Summary> summaries;
  for (int i = 0; i < 20; ++i) {
    Summary s;
    s.algorithm = "ingo";
    s.objective = "sphere";
    s.dim = 5;
    s.seed = static_cast<std::uint64_t>(i);
    s.final_best = static_cast<double>(20 - i);  // values 1..20 in reverse
    s.evals_to_target = i < 10 ? 100 * (i + 1) : -1;
    summaries.push_back(s);
  }
  std::vector<AggregateRow> agg = summarize(summaries);
  REQUIRE(agg.size() == 1);
  CHECK(agg[0].runs == 20);
  CHECK(agg[0].best_median == doctest::Approx(10.5));  // (10 + 11) / 2
  CHECK(agg[0].reached_target == 10);
  CHECK(agg[0].evals_to_target_median == doctest::Approx(550.0));  // (500 + 600) / 2
}

TEST_CASE("summaries split into per-(algorithm, objective, dim) groups") {
  std::vector<Summary> summaries;
  for (const char* algo : {"ingo", "igo"})
    for (int seed = 0; seed < 3; ++seed) {
      Summary s;
      s.algorithm = algo;
      s.objective = "ellipsoid";
      s.dim = 20;
      s.seed = static_cast<std::uint64_t>(seed);
      s.final_best = seed;
      summaries.push_back(s);
    }
  std::vector<AggregateRow> agg = summarize(summaries);
  CHECK(agg.size() == 2);
  for (const AggregateRow& row : agg) CHECK(row.runs == 3);
}

TEST_CASE("iteration caps and variance collapse terminate runs") {
  RunConfig capped;
  capped.algorithm = Algorithm::ingo;
  capped.objective = "sphere";
  capped.dim = 3;
  capped.budget = 100000;
  capped.max_iterations = 5;
  RunResult r = run_experiment(capped);
  CHECK(r.summary.iterations == 5);
  CHECK(r.summary.termination == "max_iterations");
  CHECK(r.rows.back().iteration == 5);

  RunConfig collapsing;
  collapsing.algorithm = Algorithm::ingo;
  collapsing.objective = "sphere";
  collapsing.dim = 3;
  collapsing.budget = 2000000;
  collapsing.collapse_tol = 1e-30;
  RunResult c = run_experiment(collapsing);
  CHECK(c.summary.termination == "collapse");
  CHECK(c.rows.back().sigma_eig_min < 1e-30);
}

TEST_CASE("framework and categorical algorithms run end to end") {
  RunConfig fw;
  fw.algorithm = Algorithm::framework;
  fw.objective = "sphere";
  fw.dim = 4;
  fw.budget = 20000;
  fw.clip_b = 0.5;
  fw.clip_gamma_half = 1.0;
  RunResult r = run_experiment(fw);
  // Clipped curvature forces steady covariance contraction.
  CHECK(r.rows.back().sigma_eig_max < r.rows.front().sigma_eig_max);
  CHECK(r.summary.final_best < 1.0);

  RunConfig cat;
  cat.algorithm = Algorithm::categorical_ingo;
  cat.objective = "binary_reconstruction";
  cat.dim = 16;
  cat.budget = 20000;
  RunResult rc = run_experiment(cat);
  CHECK(rc.summary.final_best <= rc.rows.front().best_f_so_far);
  CHECK(std::isnan(rc.rows.back().f_at_mean));  // discrete rows carry no mean fitness
}

TEST_CASE("wall_ms stays empty unless timing is requested") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::ingo;
  cfg.objective = "sphere";
  cfg.dim = 2;
  cfg.budget = 100;
  RunResult plain = run_experiment(cfg);
  CHECK(std::isnan(plain.rows.front().wall_ms));
  cfg.record_timing = true;
  RunResult timed = run_experiment(cfg);
  CHECK(!std::isnan(timed.rows.front().wall_ms));
}

}  // TEST_SUITE
