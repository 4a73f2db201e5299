#ifndef INGO_BENCHMARKS_HPP
#define INGO_BENCHMARKS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ingo/errors.hpp"
#include "ingo/linalg.hpp"
#include "ingo/rng.hpp"

namespace ingo {

inline constexpr double kPi = 3.14159265358979323846;

namespace bench {

inline void need_dim(const Vec& x, std::size_t min_d, const char* name) {
  require(x.size() >= min_d, Errc::dim_too_small, std::string(name) + ": dimension too small");
}

inline double sphere(const Vec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

inline double ellipsoid(const Vec& x) {
  need_dim(x, 2, "ellipsoid");
  const double d1 = static_cast<double>(x.size() - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += std::pow(10.0, 6.0 * static_cast<double>(i) / d1) * x[i] * x[i];
  return s;
}

inline double l1_ellipsoid(const Vec& x) {
  need_dim(x, 2, "l1_ellipsoid");
  const double d1 = static_cast<double>(x.size() - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += std::pow(10.0, 6.0 * static_cast<double>(i) / d1) * std::abs(x[i]);
  return s;
}

inline double lhalf_ellipsoid(const Vec& x) {
  need_dim(x, 2, "lhalf_ellipsoid");
  const double d1 = static_cast<double>(x.size() - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += std::pow(10.0, 6.0 * static_cast<double>(i) / d1) * std::sqrt(std::abs(x[i]));
  return s;
}

// First term squared: the linear form is unbounded below, so the standard
// squared Discus is used.
inline double discus(const Vec& x) {
  need_dim(x, 2, "discus");
  double s = 1e6 * x[0] * x[0];
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
  return s;
}

inline double levy(const Vec& x) {
  need_dim(x, 1, "levy");
  const std::size_t d = x.size();
  auto w = [&](std::size_t i) { return 1.0 + (x[i] - 1.0) / 4.0; };
  double s0 = std::sin(kPi * w(0));
  double s = s0 * s0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    double wi = w(i);
    double sw = std::sin(kPi * wi + 1.0);
    s += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * sw * sw);
  }
  double wd = w(d - 1);
  double sd = std::sin(2.0 * kPi * wd);
  s += (wd - 1.0) * (wd - 1.0) * (1.0 + sd * sd);
  return s;
}

inline double rastrigin10(const Vec& x) {
  need_dim(x, 2, "rastrigin10");
  const double d1 = static_cast<double>(x.size() - 1);
  double s = 10.0 * static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double scaled = std::pow(10.0, static_cast<double>(i) / d1) * x[i];
    s += scaled * scaled - 10.0 * std::cos(2.0 * kPi * scaled);
  }
  return s;
}

}  // namespace bench

inline double eval_benchmark(const std::string& name, const Vec& x) {
  if (name == "sphere") return bench::sphere(x);
  if (name == "ellipsoid") return bench::ellipsoid(x);
  if (name == "l1_ellipsoid") return bench::l1_ellipsoid(x);
  if (name == "lhalf_ellipsoid") return bench::lhalf_ellipsoid(x);
  if (name == "discus") return bench::discus(x);
  if (name == "levy") return bench::levy(x);
  if (name == "rastrigin10") return bench::rastrigin10(x);
  raise(Errc::unknown_function, "eval_benchmark: unknown function '" + name + "'");
}

/// Regret-form binary reconstruction objective:
/// f(x) = ||sign(x - 0.5) - w||^2 - ||sign(w) - w||^2; zero exactly when the
/// bit pattern matches the signs of w.
inline double eval_binary_reconstruction(const std::vector<std::uint8_t>& x, const Vec& w) {
  require(x.size() == w.size(), Errc::dim_mismatch, "binary_reconstruction: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(w[i] != 0.0, Errc::zero_target_entry, "binary_reconstruction: target entry is zero");
    double sx = x[i] ? 1.0 : -1.0;
    double sw = w[i] > 0.0 ? 1.0 : -1.0;
    s += (sx - w[i]) * (sx - w[i]) - (sw - w[i]) * (sw - w[i]);
  }
  return s;
}

/// Analytic moments of the sphere objective under a Gaussian:
/// E[f] = ||mu||^2 + tr Sigma, grad_mu = 2 mu, grad_Sigma = I.
inline std::tuple<double, Vec, Matrix> sphere_moments(const Vec& mu, const Matrix& sigma) {
  require(sigma.rows() == mu.size() && sigma.cols() == mu.size(), Errc::dim_mismatch,
          "sphere_moments: dimension mismatch");
  double e = dot(mu, mu) + trace(sigma);
  Vec g(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) g[i] = 2.0 * mu[i];
  return {e, std::move(g), Matrix::identity(mu.size())};
}

/// Named objective resolved from a run configuration. Continuous functions
/// carry `eval`; binary ones carry `eval_bits` plus the reconstruction target.
struct ObjectiveSpec {
  std::string name;
  std::size_t dim = 0;
  bool discrete = false;
  std::function<double(const Vec&)> eval;
  std::function<double(const std::vector<std::uint8_t>&)> eval_bits;
  std::optional<double> known_optimum;
  Vec target_w;
};

inline ObjectiveSpec make_objective(const std::string& name, std::size_t dim, Rng& rng) {
  ObjectiveSpec spec;
  spec.name = name;
  spec.dim = dim;
  if (name == "binary_reconstruction") {
    spec.discrete = true;
    spec.target_w.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      double w = rng.gaussian();
      while (w == 0.0) w = rng.gaussian();
      spec.target_w[i] = w;
    }
    Vec w = spec.target_w;
    spec.eval_bits = [w](const std::vector<std::uint8_t>& bits) {
      return eval_binary_reconstruction(bits, w);
    };
    spec.known_optimum = 0.0;
    return spec;
  }
  // Validates the name (and minimum dimension) eagerly.
  eval_benchmark(name, Vec(dim, 0.0));
  spec.eval = [name](const Vec& x) { return eval_benchmark(name, x); };
  spec.known_optimum = 0.0;  // every continuous function in the suite has minimum 0
  return spec;
}

}  // namespace ingo

#endif  // INGO_BENCHMARKS_HPP
