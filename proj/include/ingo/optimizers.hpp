#ifndef INGO_OPTIMIZERS_HPP
#define INGO_OPTIMIZERS_HPP

#include <cmath>
#include <cstdint>
#include <utility>

#include "ingo/errors.hpp"
#include "ingo/estimators.hpp"
#include "ingo/gaussian.hpp"
#include "ingo/linalg.hpp"
#include "ingo/rng.hpp"

namespace ingo {

/// Eigenvalue clamp applied after every precision-matrix (or covariance)
/// update. The floor is relative to the largest eigenvalue so indefinite
/// updates are repaired without capping the overall scale; the ceiling is an
/// overflow guard only. Growth of the precision matrix is otherwise
/// unbounded, which the high-precision runs require.
struct SafeguardPolicy {
  double rel_floor = 1e-12;
  double ceil = 1e300;

  double floor_for(double lambda_max) const { return rel_floor * std::max(lambda_max, 1.0); }
};

/// Full-matrix Gaussian search state. The stored authority is the precision
/// matrix inv_sigma; sigma and its square-root factors are caches rebuilt
/// from one eigendecomposition per tell.
struct GaussianSearchState {
  Vec mu;
  Matrix inv_sigma;
  Matrix sigma;
  Matrix sqrt_sigma;
  Matrix inv_sqrt_sigma;
  double sigma_eig_min = 0.0;
  double sigma_eig_max = 0.0;
  double beta = 0.0;
  std::uint64_t iteration = 0;
  std::uint64_t evals = 0;
  bool safeguard_activated = false;
  SafeguardPolicy safeguard;

  std::size_t dim() const { return mu.size(); }
  GaussianParams params() const { return {mu, sigma}; }
};

namespace detail {

/// Installs inv_sigma (clamped) and all caches from an eigendecomposition of
/// the raw precision matrix.
inline void install_precision(GaussianSearchState& state, const Matrix& inv_sigma_raw) {
  SymEigen e = sym_eigen(inv_sigma_raw);
  double lmax = e.values.back();
  double floor = state.safeguard.floor_for(lmax);
  double ceil = state.safeguard.ceil;
  bool clamped = false;
  Vec lambda = e.values;
  for (double& v : lambda) {
    if (!(v >= floor)) {
      v = floor;
      clamped = true;
    } else if (v > ceil) {
      v = ceil;
      clamped = true;
    }
  }
  state.safeguard_activated = clamped;
  SymEigen ec{lambda, e.vectors};
  state.inv_sigma = clamped ? spectral_apply(ec, [](double v) { return v; }) : inv_sigma_raw;
  state.sigma = spectral_apply(ec, [](double v) { return 1.0 / v; });
  state.sqrt_sigma = spectral_apply(ec, [](double v) { return 1.0 / std::sqrt(v); });
  state.inv_sqrt_sigma = spectral_apply(ec, [](double v) { return std::sqrt(v); });
  state.sigma_eig_min = 1.0 / lambda.back();
  state.sigma_eig_max = 1.0 / lambda.front();
}

/// Same installation starting from a covariance update (IGO path).
inline void install_covariance(GaussianSearchState& state, const Matrix& sigma_raw) {
  SymEigen e = sym_eigen(sigma_raw);
  double lmax = e.values.back();
  double floor = state.safeguard.floor_for(lmax);
  double ceil = state.safeguard.ceil;
  bool clamped = false;
  Vec lambda = e.values;
  for (double& v : lambda) {
    if (!(v >= floor)) {
      v = floor;
      clamped = true;
    } else if (v > ceil) {
      v = ceil;
      clamped = true;
    }
  }
  state.safeguard_activated = clamped;
  SymEigen ec{lambda, e.vectors};
  state.sigma = clamped ? spectral_apply(ec, [](double v) { return v; }) : sigma_raw;
  state.inv_sigma = spectral_apply(ec, [](double v) { return 1.0 / v; });
  state.sqrt_sigma = spectral_apply(ec, [](double v) { return std::sqrt(v); });
  state.inv_sqrt_sigma = spectral_apply(ec, [](double v) { return 1.0 / std::sqrt(v); });
  state.sigma_eig_min = lambda.front();
  state.sigma_eig_max = lambda.back();
}

/// Weighted direction sums shared by the tell rules:
///   s = sum_i (h_i / N) z_i,  b = sum_i (h_i / N) z_i z_i^T.
inline void weighted_sums(const DirectionBatch& z, const Vec& weights, Vec& s, Matrix& b) {
  const std::size_t n = z.count();
  const std::size_t d = z.dim();
  const double inv_n = 1.0 / static_cast<double>(n);
  s.assign(d, 0.0);
  b = Matrix(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    double w = weights[i] * inv_n;
    if (w == 0.0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      double zij = z.z(i, j);
      s[j] += w * zij;
      for (std::size_t k = 0; k <= j; ++k) b(j, k) += w * zij * z.z(i, k);
    }
  }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) b(j, k) = b(k, j);
}

inline ShapedFitness checked_shape(const GaussianSearchState& state, const DirectionBatch& z,
                                   const Vec& fitness) {
  require(z.dim() == state.dim(), Errc::dim_mismatch, "tell: direction dimension mismatch");
  require(fitness.size() == z.count(), Errc::dim_mismatch, "tell: fitness count mismatch");
  require(all_finite(fitness), Errc::non_finite_input, "tell: non-finite fitness");
  return shape_fitness(fitness);
}

}  // namespace detail

inline GaussianSearchState make_gaussian_state(Vec mu, const Matrix& sigma, double beta,
                                               SafeguardPolicy safeguard = {}) {
  require(is_symmetric(sigma), Errc::non_symmetric, "make_gaussian_state: covariance not symmetric");
  require(sigma.rows() == mu.size(), Errc::dim_mismatch, "make_gaussian_state: dimension mismatch");
  require(beta > 0.0, Errc::bad_bounds, "make_gaussian_state: beta must be positive");
  SymEigen e = sym_eigen(sigma);
  require(e.values.front() > 0.0, Errc::singular_input, "make_gaussian_state: covariance not PD");
  GaussianSearchState state;
  state.mu = std::move(mu);
  state.beta = beta;
  state.safeguard = safeguard;
  detail::install_precision(state, spectral_apply(e, [](double v) { return 1.0 / v; }));
  state.safeguard_activated = false;
  return state;
}

/// One batch of candidates: raw directions plus the mapped points
/// x_i = mu + Sigma^1/2 z_i.
struct AskResult {
  DirectionBatch directions;
  Matrix candidates;
};

inline Matrix apply_directions(const Vec& mu, const Matrix& sqrt_sigma, const Matrix& z) {
  const std::size_t n = z.rows();
  const std::size_t d = mu.size();
  Matrix x(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double s = mu[j];
      for (std::size_t k = 0; k < d; ++k) s += sqrt_sigma(j, k) * z(i, k);
      x(i, j) = s;
    }
  return x;
}

/// Read-only: sampling never advances the state.
inline AskResult ask(const GaussianSearchState& state, std::size_t n, Rng& rng,
                     DirectionKind kind = DirectionKind::iid) {
  require(n >= 2, Errc::batch_too_small, "ask: need n >= 2");
  DirectionBatch z = kind == DirectionKind::iid         ? directions_iid(n, state.dim(), rng)
                     : kind == DirectionKind::antithetic ? directions_antithetic(n, state.dim(), rng)
                                                         : directions_orthogonal(n, state.dim(), rng);
  Matrix x = apply_directions(state.mu, state.sqrt_sigma, z.z);
  return {std::move(z), std::move(x)};
}

/// Implicit natural gradient tell: the precision matrix is updated first and
/// the new covariance scales the mean step (the one-step-lookahead rule).
inline GaussianSearchState ingo_tell(const GaussianSearchState& state, const DirectionBatch& z,
                                     const Vec& fitness) {
  ShapedFitness shaped = detail::checked_shape(state, z, fitness);
  GaussianSearchState next = state;
  next.iteration += 1;
  next.evals += z.count();
  if (shaped.degenerate) {
    next.safeguard_activated = false;
    return next;
  }

  Vec s;
  Matrix b;
  detail::weighted_sums(z, shaped.weights, s, b);

  Matrix increment = matmul(matmul(state.inv_sqrt_sigma, b), state.inv_sqrt_sigma);
  Matrix raw = symmetrize(state.inv_sigma + state.beta * increment);
  detail::install_precision(next, raw);

  Vec v = matvec(state.inv_sqrt_sigma, s);
  Vec step = matvec(next.sigma, v);
  for (std::size_t j = 0; j < next.dim(); ++j) next.mu[j] = state.mu[j] - state.beta * step[j];
  return next;
}

/// Same precision update as ingo_tell; the mean step uses the current
/// covariance square root instead of the updated covariance.
inline GaussianSearchState ingostep_tell(const GaussianSearchState& state, const DirectionBatch& z,
                                         const Vec& fitness) {
  ShapedFitness shaped = detail::checked_shape(state, z, fitness);
  GaussianSearchState next = state;
  next.iteration += 1;
  next.evals += z.count();
  if (shaped.degenerate) {
    next.safeguard_activated = false;
    return next;
  }

  Vec s;
  Matrix b;
  detail::weighted_sums(z, shaped.weights, s, b);

  Matrix increment = matmul(matmul(state.inv_sqrt_sigma, b), state.inv_sqrt_sigma);
  Matrix raw = symmetrize(state.inv_sigma + state.beta * increment);
  detail::install_precision(next, raw);

  Vec step = matvec(state.sqrt_sigma, s);
  for (std::size_t j = 0; j < next.dim(); ++j) next.mu[j] = state.mu[j] - state.beta * step[j];
  return next;
}

/// Explicit natural-gradient baseline: identical shaped weights, but the
/// update is applied to the covariance itself rather than its inverse.
inline GaussianSearchState igo_baseline_tell(const GaussianSearchState& state, const DirectionBatch& z,
                                    const Vec& fitness) {
  ShapedFitness shaped = detail::checked_shape(state, z, fitness);
  GaussianSearchState next = state;
  next.iteration += 1;
  next.evals += z.count();
  if (shaped.degenerate) {
    next.safeguard_activated = false;
    return next;
  }

  Vec s;
  Matrix b;
  detail::weighted_sums(z, shaped.weights, s, b);
  double wsum = 0.0;
  for (double h : shaped.weights) wsum += h;
  wsum /= static_cast<double>(z.count());

  Matrix increment = matmul(matmul(state.sqrt_sigma, b), state.sqrt_sigma) - wsum * state.sigma;
  Matrix raw = symmetrize(state.sigma - state.beta * increment);
  detail::install_covariance(next, raw);

  Vec step = matvec(state.sqrt_sigma, s);
  for (std::size_t j = 0; j < next.dim(); ++j) next.mu[j] = state.mu[j] - state.beta * step[j];
  return next;
}

/// General framework step: Sigma^-1 <- Sigma^-1 + 2 beta G_hat, then
/// mu <- mu - beta Sigma_new g_hat. G_hat may be any symmetric estimate; the
/// safeguard repairs indefiniteness.
inline GaussianSearchState framework_step(const GaussianSearchState& state, const Vec& g_hat,
                                          const Matrix& g_mat, double beta) {
  require(g_hat.size() == state.dim(), Errc::dim_mismatch, "framework_step: gradient dimension mismatch");
  require(g_mat.rows() == state.dim() && g_mat.cols() == state.dim(), Errc::dim_mismatch,
          "framework_step: G dimension mismatch");
  require(is_symmetric(g_mat), Errc::non_symmetric, "framework_step: G not symmetric");

  GaussianSearchState next = state;
  next.iteration += 1;
  Matrix raw = symmetrize(state.inv_sigma + 2.0 * beta * g_mat);
  detail::install_precision(next, raw);
  Vec step = matvec(next.sigma, g_hat);
  for (std::size_t j = 0; j < next.dim(); ++j) next.mu[j] = state.mu[j] - beta * step[j];
  return next;
}

/// Diagonal search state shared by the separable optimizer and the ES
/// baseline. inv_var stores per-coordinate precisions.
struct DiagonalSearchState {
  Vec mu;
  Vec inv_var;
  double beta = 0.0;
  std::uint64_t iteration = 0;
  std::uint64_t evals = 0;
  bool safeguard_activated = false;
  SafeguardPolicy safeguard;

  std::size_t dim() const { return mu.size(); }
};

inline DiagonalSearchState make_diagonal_state(Vec mu, const Vec& variances, double beta,
                                               SafeguardPolicy safeguard = {}) {
  require(mu.size() == variances.size(), Errc::dim_mismatch, "make_diagonal_state: dimension mismatch");
  require(beta > 0.0, Errc::bad_bounds, "make_diagonal_state: beta must be positive");
  DiagonalSearchState state;
  state.mu = std::move(mu);
  state.inv_var.resize(variances.size());
  for (std::size_t j = 0; j < variances.size(); ++j) {
    require(variances[j] > 0.0, Errc::singular_input, "make_diagonal_state: nonpositive variance");
    state.inv_var[j] = 1.0 / variances[j];
  }
  state.beta = beta;
  state.safeguard = safeguard;
  return state;
}

inline AskResult ask_diagonal(const DiagonalSearchState& state, std::size_t n, Rng& rng,
                              DirectionKind kind = DirectionKind::iid) {
  require(n >= 2, Errc::batch_too_small, "ask_diagonal: need n >= 2");
  const std::size_t d = state.dim();
  DirectionBatch z = kind == DirectionKind::iid         ? directions_iid(n, d, rng)
                     : kind == DirectionKind::antithetic ? directions_antithetic(n, d, rng)
                                                         : directions_orthogonal(n, d, rng);
  Matrix x(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) x(i, j) = state.mu[j] + z.z(i, j) / std::sqrt(state.inv_var[j]);
  return {std::move(z), std::move(x)};
}

/// Diagonal restriction of the full-matrix rule; agrees with ingo_tell
/// exactly in one dimension.
inline DiagonalSearchState fast_ingo_tell(const DiagonalSearchState& state, const DirectionBatch& z,
                                          const Vec& fitness) {
  require(z.dim() == state.dim(), Errc::dim_mismatch, "fast_ingo_tell: direction dimension mismatch");
  require(fitness.size() == z.count(), Errc::dim_mismatch, "fast_ingo_tell: fitness count mismatch");
  require(all_finite(fitness), Errc::non_finite_input, "fast_ingo_tell: non-finite fitness");
  ShapedFitness shaped = shape_fitness(fitness);

  DiagonalSearchState next = state;
  next.iteration += 1;
  next.evals += z.count();
  next.safeguard_activated = false;
  if (shaped.degenerate) return next;

  const std::size_t n = z.count();
  const std::size_t d = state.dim();
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double w = shaped.weights[i] * inv_n;
      s += w * z.z(i, j);
      q += w * z.z(i, j) * z.z(i, j);
    }
    double iv = state.inv_var[j];
    double iv_next = iv + state.beta * iv * q;
    // Per-coordinate form of the safeguard; floor relative to the entry's own
    // magnitude so coordinates with very different scales never couple.
    double floor = state.safeguard.rel_floor * std::max(iv_next, 1.0);
    if (!(iv_next >= floor)) {
      iv_next = floor;
      next.safeguard_activated = true;
    } else if (iv_next > state.safeguard.ceil) {
      iv_next = state.safeguard.ceil;
      next.safeguard_activated = true;
    }
    next.inv_var[j] = iv_next;
    next.mu[j] = state.mu[j] - state.beta * (1.0 / iv_next) * std::sqrt(iv) * s;
  }
  return next;
}

/// Fixed-variance antithetic ES baseline. The perturbation scale cancels in
/// the shaped update, leaving mu <- mu - alpha (1/N) sum h_i z_i.
inline DiagonalSearchState es_baseline_tell(const DiagonalSearchState& state, const DirectionBatch& z,
                                            const Vec& fitness, double alpha = 0.01) {
  require(z.kind == DirectionKind::antithetic, Errc::config_invalid,
          "es_baseline_tell: requires antithetic directions");
  require(z.dim() == state.dim(), Errc::dim_mismatch, "es_baseline_tell: direction dimension mismatch");
  require(fitness.size() == z.count(), Errc::dim_mismatch, "es_baseline_tell: fitness count mismatch");
  require(all_finite(fitness), Errc::non_finite_input, "es_baseline_tell: non-finite fitness");
  ShapedFitness shaped = shape_fitness(fitness);

  DiagonalSearchState next = state;
  next.iteration += 1;
  next.evals += z.count();
  next.safeguard_activated = false;
  if (shaped.degenerate) return next;

  const double inv_n = 1.0 / static_cast<double>(z.count());
  for (std::size_t j = 0; j < state.dim(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < z.count(); ++i) s += shaped.weights[i] * inv_n * z.z(i, j);
    next.mu[j] = state.mu[j] - alpha * s;
  }
  return next;
}

}  // namespace ingo

#endif  // INGO_OPTIMIZERS_HPP
