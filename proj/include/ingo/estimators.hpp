#ifndef INGO_ESTIMATORS_HPP
#define INGO_ESTIMATORS_HPP

#include <cmath>
#include <cstddef>

#include "ingo/errors.hpp"
#include "ingo/gaussian.hpp"
#include "ingo/linalg.hpp"
#include "ingo/rng.hpp"

namespace ingo {

/// Batch fitness after the normalization h_i = (f_i - mean) / std, using the
/// population (divide-by-N) standard deviation so the weights have unit
/// variance exactly. A constant batch carries no ranking information; it is
/// flagged degenerate and the weights are all zero.
struct ShapedFitness {
  Vec raw;
  double mu_hat = 0.0;
  double sigma_hat = 0.0;
  Vec weights;
  bool degenerate = false;
};

inline ShapedFitness shape_fitness(const Vec& raw) {
  require(raw.size() >= 2, Errc::batch_too_small, "shape_fitness: need at least 2 values");
  require(all_finite(raw), Errc::non_finite_input, "shape_fitness: non-finite fitness value");
  const double n = static_cast<double>(raw.size());

  ShapedFitness out;
  out.raw = raw;
  double mean = 0.0;
  for (double f : raw) mean += f;
  mean /= n;
  double var = 0.0;
  for (double f : raw) var += (f - mean) * (f - mean);
  var /= n;

  out.mu_hat = mean;
  out.sigma_hat = std::sqrt(var);
  out.weights.assign(raw.size(), 0.0);
  if (out.sigma_hat < 1e-300) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) out.weights[i] = (raw[i] - mean) / out.sigma_hat;
  return out;
}

enum class DirectionKind { iid, antithetic, orthogonal };

/// A batch of standard-normal search directions, one per row.
struct DirectionBatch {
  Matrix z;
  DirectionKind kind = DirectionKind::iid;

  std::size_t count() const { return z.rows(); }
  std::size_t dim() const { return z.cols(); }
};

inline DirectionBatch directions_iid(std::size_t n, std::size_t d, Rng& rng) {
  Matrix z(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) z(i, j) = rng.gaussian();
  return {std::move(z), DirectionKind::iid};
}

/// Mirrored pairs: row n/2 + i is the exact negation of row i.
inline DirectionBatch directions_antithetic(std::size_t n, std::size_t d, Rng& rng) {
  require(n >= 2 && n % 2 == 0, Errc::batch_too_small, "directions_antithetic: need even n >= 2");
  Matrix z(n, d);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double g = rng.gaussian();
      z(i, j) = g;
      z(half + i, j) = -g;
    }
  return {std::move(z), DirectionKind::antithetic};
}

/// Mutually orthogonal rows with standard-normal marginals: orthonormalize a
/// Gaussian matrix by modified Gram-Schmidt, then rescale each row by an
/// independent chi(d)-distributed length.
inline DirectionBatch directions_orthogonal(std::size_t n, std::size_t d, Rng& rng) {
  require(n >= 1, Errc::batch_too_small, "directions_orthogonal: need n >= 1");
  require(n <= d, Errc::too_many_directions, "directions_orthogonal: more directions than dimensions");
  Matrix z(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) z(i, j) = rng.gaussian();
    for (std::size_t k = 0; k < i; ++k) {
      double proj = 0.0;
      for (std::size_t j = 0; j < d; ++j) proj += z(i, j) * z(k, j);
      for (std::size_t j = 0; j < d; ++j) z(i, j) -= proj * z(k, j);
    }
    double nrm = 0.0;
    for (std::size_t j = 0; j < d; ++j) nrm += z(i, j) * z(i, j);
    nrm = std::sqrt(nrm);
    // A fully projected-out row cannot be normalized; draw it again.
    if (nrm < 1e-150) {
      --i;
      continue;
    }
    for (std::size_t j = 0; j < d; ++j) z(i, j) /= nrm;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double len_sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double g = rng.gaussian();
      len_sq += g * g;
    }
    double len = std::sqrt(len_sq);
    for (std::size_t j = 0; j < d; ++j) z(i, j) *= len;
  }
  return {std::move(z), DirectionKind::orthogonal};
}

/// Stochastic gradient pair fed to the framework step: g_mu estimates the
/// mean gradient, g_sigma the covariance gradient (with the 1/2 factor of the
/// analytic formula; the framework step applies 2 beta, so the composition
/// reproduces the practical algorithms line for line).
struct GradientEstimate {
  Vec g_mu;
  Matrix g_sigma;
};

/// Shaped batch estimates from raw directions:
///   g_mu    = sum_i (h_i / N) Sigma^-1/2 z_i
///   g_sigma = 1/2 sum_i (h_i / N) Sigma^-1/2 z_i z_i^T Sigma^-1/2
/// The -Sigma^-1 term of the analytic covariance gradient cancels exactly
/// because the shaped weights sum to zero.
inline GradientEstimate grad_estimates_batch_with_factor(const Matrix& inv_sqrt_sigma,
                                                         const DirectionBatch& z,
                                                         const ShapedFitness& shaped) {
  const std::size_t n = z.count();
  const std::size_t d = z.dim();
  require(shaped.weights.size() == n, Errc::dim_mismatch, "grad_estimates_batch: batch size mismatch");
  require(inv_sqrt_sigma.rows() == d && inv_sqrt_sigma.cols() == d, Errc::dim_mismatch,
          "grad_estimates_batch: factor dimension mismatch");

  Vec s(d, 0.0);
  Matrix b(d, d);
  if (!shaped.degenerate) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      double w = shaped.weights[i] * inv_n;
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

  GradientEstimate out;
  out.g_mu = matvec(inv_sqrt_sigma, s);
  out.g_sigma = 0.5 * matmul(matmul(inv_sqrt_sigma, b), inv_sqrt_sigma);
  out.g_sigma = symmetrize(out.g_sigma);
  return out;
}

inline GradientEstimate grad_estimates_batch(const GaussianParams& state, const DirectionBatch& z,
                                             const ShapedFitness& shaped) {
  check_gaussian(state);
  require(z.dim() == state.dim(), Errc::dim_mismatch, "grad_estimates_batch: direction dimension mismatch");
  return grad_estimates_batch_with_factor(spd_inv_sqrt(state.sigma), z, shaped);
}

/// Single-probe mean-gradient estimate Sigma^-1/2 z (f(mu + Sigma^1/2 z) - f(mu)).
inline Vec grad_mu_single_with_factor(const Matrix& inv_sqrt_sigma, const Vec& z, double f_center,
                                      double f_probe) {
  require(inv_sqrt_sigma.cols() == z.size(), Errc::dim_mismatch, "grad_mu_single: dimension mismatch");
  Vec g = matvec(inv_sqrt_sigma, z);
  double df = f_probe - f_center;
  for (double& v : g) v *= df;
  return g;
}

inline Vec grad_mu_single(const GaussianParams& state, const Vec& z, double f_center, double f_probe) {
  check_gaussian(state);
  return grad_mu_single_with_factor(spd_inv_sqrt(state.sigma), z, f_center, f_probe);
}

/// Projects a symmetric matrix onto {G : b I <= G <= gamma_half I} by
/// eigenvalue clamping. Identity pass-through when nothing is out of range.
inline Matrix clip_G(const Matrix& g, double b, double gamma_half) {
  require(is_symmetric(g), Errc::non_symmetric, "clip_G: input not symmetric");
  require(b > 0.0 && gamma_half > 0.0 && b <= gamma_half, Errc::bad_bounds,
          "clip_G: need 0 < b <= gamma_half");
  bool activated = false;
  return pd_safeguard(g, b, gamma_half, &activated);
}

}  // namespace ingo

#endif  // INGO_ESTIMATORS_HPP
