#ifndef INGO_TESTS_HELPERS_HPP
#define INGO_TESTS_HELPERS_HPP

#include <cmath>

#include "ingo/linalg.hpp"
#include "ingo/rng.hpp"

namespace test_helpers {

inline ingo::Matrix random_symmetric(std::size_t d, ingo::Rng& rng, double scale = 1.0) {
  ingo::Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double v = scale * rng.gaussian();
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

inline ingo::Matrix random_spd(std::size_t d, ingo::Rng& rng, double ridge = 0.2) {
  ingo::Matrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.gaussian();
  ingo::Matrix m = ingo::matmul(g, ingo::transpose(g));
  for (std::size_t i = 0; i < d; ++i) m(i, i) += ridge;
  return m;
}

inline ingo::Vec random_vec(std::size_t d, ingo::Rng& rng, double scale = 1.0) {
  ingo::Vec v(d);
  for (double& x : v) x = scale * rng.gaussian();
  return v;
}

inline double max_abs_diff(const ingo::Matrix& a, const ingo::Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double max_abs_diff(const ingo::Vec& a, const ingo::Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double rel_frobenius_diff(const ingo::Matrix& a, const ingo::Matrix& b) {
  return ingo::frobenius_norm(a - b) / std::max(1.0, ingo::frobenius_norm(b));
}

}  // namespace test_helpers

#endif  // INGO_TESTS_HELPERS_HPP
