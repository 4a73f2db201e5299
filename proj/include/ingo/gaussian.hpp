#ifndef INGO_GAUSSIAN_HPP
#define INGO_GAUSSIAN_HPP

#include <cmath>
#include <utility>

#include "ingo/errors.hpp"
#include "ingo/linalg.hpp"
#include "ingo/rng.hpp"

namespace ingo {

/// Gaussian search distribution in (mean, covariance) coordinates.
struct GaussianParams {
  Vec mu;
  Matrix sigma;

  std::size_t dim() const { return mu.size(); }
};

/// Natural parameterization: eta1 = Sigma^-1 mu, eta2 = -1/2 Sigma^-1.
struct NaturalParams {
  Vec eta1;
  Matrix eta2;

  std::size_t dim() const { return eta1.size(); }
};

/// Mean parameterization: m1 = E[x], m2 = E[x x^T].
struct MeanParams {
  Vec m1;
  Matrix m2;

  std::size_t dim() const { return m1.size(); }
};

inline void check_gaussian(const GaussianParams& p) {
  require(all_finite(p.mu), Errc::non_finite_input, "gaussian params: mu not finite");
  require(p.sigma.rows() == p.dim() && p.sigma.cols() == p.dim(), Errc::dim_mismatch,
          "gaussian params: covariance shape mismatch");
  require(is_symmetric(p.sigma), Errc::non_symmetric, "gaussian params: covariance not symmetric");
}

inline NaturalParams to_natural(const GaussianParams& p) {
  check_gaussian(p);
  Matrix inv = spd_inverse(p.sigma);
  return {matvec(inv, p.mu), -0.5 * inv};
}

inline GaussianParams from_natural(const NaturalParams& n) {
  require(n.eta2.rows() == n.dim() && n.eta2.cols() == n.dim(), Errc::dim_mismatch,
          "from_natural: eta2 shape mismatch");
  Matrix sigma = spd_inverse(-2.0 * n.eta2);
  return {matvec(sigma, n.eta1), std::move(sigma)};
}

inline MeanParams to_mean(const GaussianParams& p) {
  check_gaussian(p);
  Matrix m2 = p.sigma;
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t j = 0; j < p.dim(); ++j) m2(i, j) += p.mu[i] * p.mu[j];
  return {p.mu, std::move(m2)};
}

inline GaussianParams from_mean(const MeanParams& m) {
  require(m.m2.rows() == m.dim() && m.m2.cols() == m.dim(), Errc::dim_mismatch,
          "from_mean: m2 shape mismatch");
  Matrix sigma = m.m2;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) sigma(i, j) -= m.m1[i] * m.m1[j];
  // m2 - m1 m1^T must itself be a valid covariance.
  SymEigen e = sym_eigen(sigma);
  require(e.values.front() > 0.0, Errc::singular_input, "from_mean: m2 - m1 m1^T not positive definite");
  return {m.m1, std::move(sigma)};
}

/// Draws n samples: Z holds raw standard normals (row per sample), X the
/// affinely mapped candidates x = mu + Sigma^1/2 z. The raw normals are
/// returned because every update rule below consumes them, not x.
inline std::pair<Matrix, Matrix> sample_gaussian_with_factor(const Vec& mu, const Matrix& sqrt_sigma,
                                                             std::size_t n, Rng& rng) {
  const std::size_t d = mu.size();
  Matrix z(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) z(i, j) = rng.gaussian();
  Matrix x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double s = mu[j];
      for (std::size_t k = 0; k < d; ++k) s += sqrt_sigma(j, k) * z(i, k);
      x(i, j) = s;
    }
  }
  return {std::move(z), std::move(x)};
}

inline std::pair<Matrix, Matrix> sample_gaussian(const GaussianParams& p, std::size_t n, Rng& rng) {
  require(n >= 1, Errc::batch_too_small, "sample_gaussian: need n >= 1");
  check_gaussian(p);
  return sample_gaussian_with_factor(p.mu, spd_sqrt(p.sigma), n, rng);
}

/// KL(p || q) for Gaussians:
/// 1/2 { ||mu_p - mu_q||^2_{Sigma_q^-1} + tr(Sigma_p Sigma_q^-1) + ln(det Sigma_q / det Sigma_p) - d }.
inline double kl_gaussian(const GaussianParams& p, const GaussianParams& q) {
  check_gaussian(p);
  check_gaussian(q);
  require(p.dim() == q.dim(), Errc::dim_mismatch, "kl_gaussian: dimension mismatch");
  const std::size_t d = p.dim();

  SymEigen eq = sym_eigen(q.sigma);
  SymEigen ep = sym_eigen(p.sigma);
  require(eq.values.front() > 0.0, Errc::singular_input, "kl_gaussian: q covariance singular");
  require(ep.values.front() > 0.0, Errc::singular_input, "kl_gaussian: p covariance singular");

  Matrix q_inv = spectral_apply(eq, [](double lambda) { return 1.0 / lambda; });

  Vec dm(d);
  for (std::size_t i = 0; i < d; ++i) dm[i] = p.mu[i] - q.mu[i];
  double quad = dot(dm, matvec(q_inv, dm));
  double tr = frobenius_dot(p.sigma, q_inv);  // tr(Sigma_p Sigma_q^-1), both symmetric

  double logdet = 0.0;
  for (std::size_t i = 0; i < d; ++i) logdet += std::log(eq.values[i]) - std::log(ep.values[i]);

  return 0.5 * (quad + tr + logdet - static_cast<double>(d));
}

/// Fisher information of the 1-D Gaussian in natural coordinates (eta1, eta2).
/// Closed form of Cov[(x, x^2)]; serves as the oracle for the natural-gradient
/// equivalence tests.
inline Matrix fim_natural_gaussian_1d(const NaturalParams& n) {
  require(n.dim() == 1, Errc::dim_mismatch, "fim_natural_gaussian_1d: 1-D only");
  require(n.eta2(0, 0) < 0.0, Errc::indefinite_input, "fim_natural_gaussian_1d: eta2 must be negative");
  double var = -1.0 / (2.0 * n.eta2(0, 0));
  double mu = n.eta1[0] * var;
  Matrix f(2, 2);
  f(0, 0) = var;
  f(0, 1) = f(1, 0) = 2.0 * mu * var;
  f(1, 1) = 4.0 * mu * mu * var + 2.0 * var * var;
  return f;
}

}  // namespace ingo

#endif  // INGO_GAUSSIAN_HPP
