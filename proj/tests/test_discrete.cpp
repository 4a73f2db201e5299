#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ingo/benchmarks.hpp"
#include "ingo/discrete.hpp"
#include "ingo/harness.hpp"

using namespace ingo;

TEST_SUITE("discrete") {

TEST_CASE("bernoulli_sample saturates at the eta clamp bound") {
  BernoulliState s = make_bernoulli_state(5, 0.1);
  for (double& e : s.eta) e = s.eta_max;
  Rng rng(0);
  BinaryMatrix x = bernoulli_sample(s, 100, rng);
  for (std::uint8_t bit : x.data) CHECK(bit == 1);
}

TEST_CASE("bernoulli_sample matches p = 1/2 at eta = 0") {
  BernoulliState s = make_bernoulli_state(3, 0.1);
  Rng rng(41);
  const std::size_t n = 100000;
  BinaryMatrix x = bernoulli_sample(s, n, rng);
  for (std::size_t j = 0; j < 3; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x.at(i, j);
    mean /= static_cast<double>(n);
    CHECK(std::abs(mean - 0.5) <= 0.005);
  }
}

TEST_CASE("samplers reject undersized batches") {
  BernoulliState b = make_bernoulli_state(3, 0.1);
  CategoricalState c = make_categorical_state(3, 4, 0.1);
  Rng rng(1);
  try {
    bernoulli_sample(b, 1, rng);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::batch_too_small);
  }
  try {
    categorical_sample(c, 1, rng);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::batch_too_small);
  }
}

TEST_CASE("bernoulli_sample is seed-deterministic") {
  BernoulliState s = make_bernoulli_state(4, 0.1);
  Rng a(9), b(9);
  BinaryMatrix xa = bernoulli_sample(s, 16, a);
  BinaryMatrix xb = bernoulli_sample(s, 16, b);
  CHECK(xa.data == xb.data);
}

TEST_CASE("bernoulli_tell hand evaluation moves probability off the worse value") {
  BernoulliState s = make_bernoulli_state(1, 0.1);
  BinaryMatrix x(2, 1);
  x.at(0, 0) = 1;
  x.at(1, 0) = 0;
  BernoulliState next = bernoulli_tell(s, x, {1.0, -1.0});
  CHECK(next.eta[0] == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(bernoulli_probs(next)[0] == doctest::Approx(0.45017).epsilon(1e-4));

  // Swapping fitness signs flips the increment exactly.
  BernoulliState flipped = bernoulli_tell(s, x, {-1.0, 1.0});
  CHECK(flipped.eta[0] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("bernoulli_tell ignores constant batches and validates input") {
  BernoulliState s = make_bernoulli_state(2, 0.2);
  BinaryMatrix x(2, 2);
  x.at(0, 0) = 1;
  BernoulliState next = bernoulli_tell(s, x, {3.0, 3.0});
  CHECK(next.eta == s.eta);

  BinaryMatrix bad(2, 2);
  bad.data[1] = 2;
  try {
    bernoulli_tell(s, bad, {1.0, 0.0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_binary_input);
  }
}

TEST_CASE("the Bernoulli h-vector is centered under its own distribution") {
  const double eta = 0.8;
  const double p = sigmoid(eta);
  const std::size_t n = 1000000;
  Rng rng(14);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    bool bit = rng.uniform() < p;
    mean += bit ? 1.0 / p : -1.0 / (1.0 - p);
  }
  mean /= static_cast<double>(n);
  double se = std::sqrt(1.0 / (p * (1.0 - p)) / static_cast<double>(n));
  CHECK(std::abs(mean) <= 3.0 * se);
}

TEST_CASE("probabilities stay strictly inside (0, 1) under aggressive updates") {
  BernoulliState s = make_bernoulli_state(3, 5.0);
  Rng rng(77);
  for (int step = 0; step < 50; ++step) {
    BinaryMatrix x = bernoulli_sample(s, 8, rng);
    Vec fitness = test_helpers::random_vec(8, rng, 10.0);
    s = bernoulli_tell(s, x, fitness);
  }
  double lo = sigmoid(-s.eta_max), hi = sigmoid(s.eta_max);
  for (double p : bernoulli_probs(s)) {
    CHECK(p >= lo);
    CHECK(p <= hi);
    CHECK(p > 0.0);
    CHECK(p < 1.0);
  }
}

TEST_CASE("categorical rows stay normalized through updates") {
  CategoricalState s = make_categorical_state(4, 3, 0.5);
  Rng rng(31);
  for (int step = 0; step < 30; ++step) {
    IntMatrix x = categorical_sample(s, 6, rng);
    s = categorical_tell(s, x, test_helpers::random_vec(6, rng, 3.0));
    Matrix p = categorical_probs(s);
    for (std::size_t i = 0; i < 4; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < 3; ++j) sum += p(i, j);
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("a sampled category is the only row entry that moves") {
  CategoricalState s = make_categorical_state(1, 3, 0.3);
  IntMatrix x(2, 1);
  x.at(0, 0) = 1;
  x.at(1, 0) = 2;
  CategoricalState next = categorical_tell(s, x, {2.0, 0.0});  // weights (1, -1)
  CHECK(next.eta(0, 0) < 0.0);   // category 1 had the worse value
  CHECK(next.eta(0, 1) > 0.0);   // category 2 had the better value
  CHECK(next.eta(0, 2) == 0.0);  // category 3 never sampled

  IntMatrix bad(2, 1);
  bad.at(0, 0) = 4;
  bad.at(1, 0) = 1;
  try {
    categorical_tell(s, bad, {1.0, 0.0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_range_category);
  }
}

TEST_CASE("a K=2 categorical reproduces the Bernoulli trajectory") {
  // Identical sample and fitness streams; the softmax difference eta_2 - eta_1
  // follows the Bernoulli natural parameter exactly, so the probabilities
  // drift together.
  const std::size_t d = 3, n = 8;
  BernoulliState bern = make_bernoulli_state(d, 0.05);
  CategoricalState cat = make_categorical_state(d, 2, 0.05);
  Rng rng(101);
  for (int step = 0; step < 100; ++step) {
    BinaryMatrix bits = bernoulli_sample(bern, n, rng);
    IntMatrix values(n, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) values.at(i, j) = bits.at(i, j) + 1;
    Vec fitness = test_helpers::random_vec(n, rng, 1.0);
    bern = bernoulli_tell(bern, bits, fitness);
    cat = categorical_tell(cat, values, fitness);

    Vec p_bern = bernoulli_probs(bern);
    Matrix p_cat = categorical_probs(cat);
    for (std::size_t j = 0; j < d; ++j) CHECK(std::abs(p_cat(j, 1) - p_bern[j]) <= 1e-6);
  }
}

TEST_CASE("ga_baseline_step with zeroed operators copies parents") {
  BinaryMatrix pop(4, 5);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j) pop.at(i, j) = (j % 2 == 0) ? 1 : 0;  // identical rows
  Rng rng(3);
  GaOptions opts;
  opts.crossover_rate = 0.0;
  opts.mutation_rate = 0.0;
  BinaryMatrix next = ga_baseline_step(pop, {1.0, 2.0, 3.0, 4.0}, rng, opts);
  CHECK(next.data == pop.data);
}

TEST_CASE("ga elitism keeps the best fitness non-increasing") {
  const std::size_t d = 16, n = 8;
  Rng rng(19);
  Vec w = test_helpers::random_vec(d, rng);
  for (double& v : w)
    if (v == 0.0) v = 1.0;
  BinaryMatrix pop(n, d);
  for (auto& bit : pop.data) bit = rng.uniform() < 0.5 ? 1 : 0;

  auto eval_pop = [&](const BinaryMatrix& p) {
    Vec f(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint8_t> row(p.data.begin() + static_cast<std::ptrdiff_t>(i * d),
                                    p.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
      f[i] = eval_binary_reconstruction(row, w);
    }
    return f;
  };

  Vec fitness = eval_pop(pop);
  double best = *std::min_element(fitness.begin(), fitness.end());
  for (int gen = 0; gen < 40; ++gen) {
    pop = ga_baseline_step(pop, fitness, rng);
    fitness = eval_pop(pop);
    double now = *std::min_element(fitness.begin(), fitness.end());
    CHECK(now <= best + 1e-12);
    best = std::min(best, now);
  }
}

TEST_CASE("ga_baseline_step rejects bad populations") {
  BinaryMatrix odd(5, 3);
  Rng rng(1);
  try {
    ga_baseline_step(odd, Vec(5, 0.0), rng);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_population);
  }
}

TEST_CASE("discrete optimizer beats the GA baseline on a d=20 reconstruction") {
  // Head-to-head at a 10^4 evaluation budget, ten seeds; final batch-mean
  // regret medians.
  Vec ingo_finals, ga_finals;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (Algorithm algo : {Algorithm::bernoulli_ingo, Algorithm::ga}) {
      RunConfig cfg;
      cfg.algorithm = algo;
      cfg.objective = "binary_reconstruction";
      cfg.dim = 20;
      cfg.seed = seed;
      cfg.budget = 10000;
      RunResult r = run_experiment(cfg);
      (algo == Algorithm::bernoulli_ingo ? ingo_finals : ga_finals)
          .push_back(r.rows.back().batch_mean_f);
    }
  }
  CHECK(median(ingo_finals) < median(ga_finals));
}

}  // TEST_SUITE
