#ifndef INGO_DISCRETE_HPP
#define INGO_DISCRETE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ingo/errors.hpp"
#include "ingo/estimators.hpp"
#include "ingo/rng.hpp"

namespace ingo {

/// Byte-per-bit candidate matrix for binary search spaces.
struct BinaryMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> data;

  BinaryMatrix() = default;
  BinaryMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::uint8_t& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint8_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Categorical candidates; values in 1..K.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  int& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  int at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Bernoulli search distribution in natural parameters; p = sigmoid(eta).
/// eta is clamped to [-eta_max, eta_max] because the h-vector blows up as p
/// approaches 0 or 1.
struct BernoulliState {
  Vec eta;
  double beta = 0.0;
  double eta_max = 10.0;
  std::uint64_t iteration = 0;
  std::uint64_t evals = 0;
  bool clamped = false;

  std::size_t dim() const { return eta.size(); }
};

inline BernoulliState make_bernoulli_state(std::size_t dim, double beta, double eta_max = 10.0) {
  require(beta > 0.0, Errc::bad_bounds, "make_bernoulli_state: beta must be positive");
  BernoulliState s;
  s.eta.assign(dim, 0.0);  // uniform initialization
  s.beta = beta;
  s.eta_max = eta_max;
  return s;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline Vec bernoulli_probs(const BernoulliState& state) {
  Vec p(state.dim());
  for (std::size_t j = 0; j < state.dim(); ++j) p[j] = sigmoid(state.eta[j]);
  return p;
}

inline BinaryMatrix bernoulli_sample(const BernoulliState& state, std::size_t n, Rng& rng) {
  require(n >= 2, Errc::batch_too_small, "bernoulli_sample: need n >= 2");
  Vec p = bernoulli_probs(state);
  BinaryMatrix x(n, state.dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < state.dim(); ++j) x.at(i, j) = rng.uniform() < p[j] ? 1 : 0;
  return x;
}

/// Shaped natural-parameter update
///   eta <- eta - beta sum_n (h_n / N) h^n,
/// where h^n_j = 1/p_j if bit j of sample n is set, else -1/(1-p_j).
inline BernoulliState bernoulli_tell(const BernoulliState& state, const BinaryMatrix& x,
                                     const Vec& fitness) {
  require(x.cols == state.dim(), Errc::dim_mismatch, "bernoulli_tell: sample dimension mismatch");
  require(fitness.size() == x.rows, Errc::dim_mismatch, "bernoulli_tell: fitness count mismatch");
  for (std::uint8_t v : x.data)
    require(v == 0 || v == 1, Errc::non_binary_input, "bernoulli_tell: sample entries must be 0/1");
  ShapedFitness shaped = shape_fitness(fitness);

  BernoulliState next = state;
  next.iteration += 1;
  next.evals += x.rows;
  next.clamped = false;
  if (shaped.degenerate) return next;

  Vec p = bernoulli_probs(state);
  const double inv_n = 1.0 / static_cast<double>(x.rows);
  for (std::size_t j = 0; j < state.dim(); ++j) {
    double g = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
      double h = x.at(i, j) ? 1.0 / p[j] : -1.0 / (1.0 - p[j]);
      g += shaped.weights[i] * inv_n * h;
    }
    double eta = state.eta[j] - state.beta * g;
    if (eta > state.eta_max) {
      eta = state.eta_max;
      next.clamped = true;
    } else if (eta < -state.eta_max) {
      eta = -state.eta_max;
      next.clamped = true;
    }
    next.eta[j] = eta;
  }
  return next;
}

/// Categorical search distribution over {1..K}^d; row-wise softmax
/// probabilities. The parameterization is redundant under row shifts, which
/// the eta clamp keeps bounded.
struct CategoricalState {
  Matrix eta;  // d x K
  double beta = 0.0;
  double eta_max = 10.0;
  std::uint64_t iteration = 0;
  std::uint64_t evals = 0;
  bool clamped = false;

  std::size_t dim() const { return eta.rows(); }
  std::size_t categories() const { return eta.cols(); }
};

inline CategoricalState make_categorical_state(std::size_t dim, std::size_t k, double beta,
                                               double eta_max = 10.0) {
  require(k >= 2, Errc::out_of_range_category, "make_categorical_state: need K >= 2");
  require(beta > 0.0, Errc::bad_bounds, "make_categorical_state: beta must be positive");
  CategoricalState s;
  s.eta = Matrix(dim, k);
  s.beta = beta;
  s.eta_max = eta_max;
  return s;
}

inline Matrix categorical_probs(const CategoricalState& state) {
  Matrix p(state.dim(), state.categories());
  for (std::size_t i = 0; i < state.dim(); ++i) {
    double row_max = state.eta(i, 0);
    for (std::size_t j = 1; j < state.categories(); ++j) row_max = std::max(row_max, state.eta(i, j));
    double z = 0.0;
    for (std::size_t j = 0; j < state.categories(); ++j) {
      p(i, j) = std::exp(state.eta(i, j) - row_max);
      z += p(i, j);
    }
    for (std::size_t j = 0; j < state.categories(); ++j) p(i, j) /= z;
  }
  return p;
}

inline IntMatrix categorical_sample(const CategoricalState& state, std::size_t n, Rng& rng) {
  require(n >= 2, Errc::batch_too_small, "categorical_sample: need n >= 2");
  Matrix p = categorical_probs(state);
  IntMatrix x(n, state.dim());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < state.dim(); ++c) {
      double u = rng.uniform();
      double acc = 0.0;
      int value = static_cast<int>(state.categories());
      for (std::size_t j = 0; j < state.categories(); ++j) {
        acc += p(c, j);
        if (u < acc) {
          value = static_cast<int>(j) + 1;
          break;
        }
      }
      x.at(i, c) = value;
    }
  }
  return x;
}

/// eta_ij <- eta_ij - beta sum_n (h_n / N) H^n_ij with
/// H^n_ij = 1/P_ij iff sample n took category j at coordinate i.
inline CategoricalState categorical_tell(const CategoricalState& state, const IntMatrix& x,
                                         const Vec& fitness) {
  require(x.cols == state.dim(), Errc::dim_mismatch, "categorical_tell: sample dimension mismatch");
  require(fitness.size() == x.rows, Errc::dim_mismatch, "categorical_tell: fitness count mismatch");
  for (int v : x.data)
    require(v >= 1 && v <= static_cast<int>(state.categories()), Errc::out_of_range_category,
            "categorical_tell: category out of range");
  ShapedFitness shaped = shape_fitness(fitness);

  CategoricalState next = state;
  next.iteration += 1;
  next.evals += x.rows;
  next.clamped = false;
  if (shaped.degenerate) return next;

  Matrix p = categorical_probs(state);
  const double inv_n = 1.0 / static_cast<double>(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    double w = shaped.weights[i] * inv_n;
    if (w == 0.0) continue;
    for (std::size_t c = 0; c < state.dim(); ++c) {
      std::size_t j = static_cast<std::size_t>(x.at(i, c) - 1);
      next.eta(c, j) -= state.beta * w / p(c, j);
    }
  }
  for (double& v : next.eta.data()) {
    if (v > state.eta_max) {
      v = state.eta_max;
      next.clamped = true;
    } else if (v < -state.eta_max) {
      v = -state.eta_max;
      next.clamped = true;
    }
  }
  return next;
}

/// Genetic-algorithm baseline: tournament selection (size 2), uniform
/// crossover, per-bit mutation, and single-elite carryover. Minimization.
struct GaOptions {
  double crossover_rate = 0.5;
  double mutation_rate = -1.0;  // negative: use 1/d
  std::size_t tournament = 2;
};

inline BinaryMatrix ga_baseline_step(const BinaryMatrix& population, const Vec& fitness, Rng& rng,
                                     GaOptions options = {}) {
  const std::size_t n = population.rows;
  const std::size_t d = population.cols;
  require(n >= 4 && n % 2 == 0, Errc::bad_population, "ga_baseline_step: need even population >= 4");
  require(fitness.size() == n, Errc::dim_mismatch, "ga_baseline_step: fitness count mismatch");
  require(all_finite(fitness), Errc::non_finite_input, "ga_baseline_step: non-finite fitness");

  double mutation = options.mutation_rate < 0.0 ? 1.0 / static_cast<double>(d) : options.mutation_rate;

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (fitness[i] < fitness[best]) best = i;

  auto tournament_pick = [&]() {
    std::size_t winner = static_cast<std::size_t>(rng.below(n));
    for (std::size_t t = 1; t < options.tournament; ++t) {
      std::size_t rival = static_cast<std::size_t>(rng.below(n));
      if (fitness[rival] < fitness[winner]) winner = rival;
    }
    return winner;
  };

  BinaryMatrix next(n, d);
  for (std::size_t j = 0; j < d; ++j) next.at(0, j) = population.at(best, j);  // elite

  std::size_t filled = 1;
  while (filled < n) {
    std::size_t pa = tournament_pick();
    std::size_t pb = tournament_pick();
    std::vector<std::uint8_t> child_a(d), child_b(d);
    bool cross = rng.uniform() < options.crossover_rate;
    for (std::size_t j = 0; j < d; ++j) {
      bool swap_bit = cross && rng.uniform() < 0.5;
      child_a[j] = swap_bit ? population.at(pb, j) : population.at(pa, j);
      child_b[j] = swap_bit ? population.at(pa, j) : population.at(pb, j);
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (mutation > 0.0 && rng.uniform() < mutation) child_a[j] ^= 1;
      if (mutation > 0.0 && rng.uniform() < mutation) child_b[j] ^= 1;
    }
    for (std::size_t j = 0; j < d; ++j) next.at(filled, j) = child_a[j];
    ++filled;
    if (filled < n) {
      for (std::size_t j = 0; j < d; ++j) next.at(filled, j) = child_b[j];
      ++filled;
    }
  }
  return next;
}

}  // namespace ingo

#endif  // INGO_DISCRETE_HPP
