#ifndef INGO_LINALG_HPP
#define INGO_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "ingo/errors.hpp"

namespace ingo {

using Vec = std::vector<double>;

/// Dense row-major matrix of doubles. Small and value-semantic; all the
/// search dimensions in this library are modest, so no effort is spent on
/// blocking or expression templates.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diag(const Vec& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Vec row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  void set_row(std::size_t i, const Vec& v) {
    std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::dim_mismatch, "matrix add: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::dim_mismatch, "matrix sub: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

inline Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& v : c.data()) v *= s;
  return c;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), Errc::dim_mismatch, "matmul: inner dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline Vec matvec(const Matrix& a, const Vec& x) {
  require(a.cols() == x.size(), Errc::dim_mismatch, "matvec: dimension mismatch");
  Vec y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline double dot(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), Errc::dim_mismatch, "dot: dimension mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

inline double trace(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
  return s;
}

/// Frobenius inner product <A, B>.
inline double frobenius_dot(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::dim_mismatch, "frobenius_dot: shape mismatch");
  return std::inner_product(a.data().begin(), a.data().end(), b.data().begin(), 0.0);
}

/// Symmetry test with the tolerance |M_ij - M_ji| <= tol * max(1, |M_ij|).
inline bool is_symmetric(const Matrix& m, double tol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol * std::max(1.0, std::abs(m(i, j)))) return false;
  return true;
}

inline Matrix symmetrize(const Matrix& m) {
  Matrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
  return s;
}

/// Eigendecomposition of a symmetric matrix: values ascending, eigenvectors
/// as the columns of `vectors` (so M = V diag(values) V^T).
struct SymEigen {
  Vec values;
  Matrix vectors;
};

/// Cyclic Jacobi eigensolver. Chosen over Cholesky-based routes because one
/// factorization serves square roots, inverse square roots and eigenvalue
/// clamping alike. Plenty accurate and fast for the dimensions used here.
inline SymEigen sym_eigen(const Matrix& m) {
  require(m.rows() == m.cols(), Errc::dim_mismatch, "sym_eigen: matrix not square");
  const std::size_t n = m.rows();
  Matrix a = symmetrize(m);
  Matrix v = Matrix::identity(n);

  if (n == 1) return {Vec{a(0, 0)}, v};

  double scale = 0.0;
  for (double x : a.data()) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return {Vec(n, 0.0), v};

  const double tol = 1e-15 * scale;
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= tol) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= tol * 1e-2) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;

        double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != p && k != q) {
            double akp = a(k, p), akq = a(k, q);
            a(k, p) = c * akp - s * akq;
            a(p, k) = a(k, p);
            a(k, q) = s * akp + c * akq;
            a(q, k) = a(k, q);
          }
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  Vec values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);

  // Sort ascending, permuting eigenvector columns along.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  Vec sorted(n);
  Matrix vs(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    sorted[k] = values[order[k]];
    for (std::size_t i = 0; i < n; ++i) vs(i, k) = v(i, order[k]);
  }
  return {std::move(sorted), std::move(vs)};
}

/// Rebuilds V f(D) V^T from a decomposition; the workhorse behind every
/// spectral transform below.
template <typename Fn>
inline Matrix spectral_apply(const SymEigen& e, Fn&& f) {
  const std::size_t n = e.values.size();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double fk = f(e.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      double vik = e.vectors(i, k) * fk;
      if (vik == 0.0) continue;
      for (std::size_t j = 0; j <= i; ++j) out(i, j) += vik * e.vectors(j, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out(i, j) = out(j, i);
  return out;
}

/// Symmetric positive semi-definite square root: returns S with S S = M.
/// Eigenvalues in [-tol, 0) with tol = 1e-10 * max(1, lambda_max) are treated
/// as rounding noise and clamped to zero.
inline Matrix spd_sqrt(const Matrix& m) {
  require(is_symmetric(m), Errc::non_symmetric, "spd_sqrt: input not symmetric");
  SymEigen e = sym_eigen(m);
  double lmax = e.values.empty() ? 0.0 : std::abs(e.values.back());
  double tol = 1e-10 * std::max(1.0, lmax);
  for (double lambda : e.values)
    require(lambda >= -tol, Errc::indefinite_input, "spd_sqrt: eigenvalue below -tol");
  return spectral_apply(e, [](double lambda) { return lambda > 0.0 ? std::sqrt(lambda) : 0.0; });
}

/// Inverse square root: returns R with R M R = I. Rejects inputs whose
/// smallest eigenvalue falls under floor_rel * max(1, lambda_max).
inline Matrix spd_inv_sqrt(const Matrix& m, double floor_rel = 1e-14) {
  require(is_symmetric(m), Errc::non_symmetric, "spd_inv_sqrt: input not symmetric");
  SymEigen e = sym_eigen(m);
  double lmax = e.values.empty() ? 0.0 : e.values.back();
  double floor = floor_rel * std::max(1.0, lmax);
  require(!e.values.empty() && e.values.front() >= floor, Errc::singular_input,
          "spd_inv_sqrt: matrix singular or near-singular");
  return spectral_apply(e, [](double lambda) { return 1.0 / std::sqrt(lambda); });
}

inline Matrix spd_inverse(const Matrix& m, double floor_rel = 1e-14) {
  require(is_symmetric(m), Errc::non_symmetric, "spd_inverse: input not symmetric");
  SymEigen e = sym_eigen(m);
  double lmax = e.values.empty() ? 0.0 : e.values.back();
  double floor = floor_rel * std::max(1.0, lmax);
  require(!e.values.empty() && e.values.front() >= floor, Errc::singular_input,
          "spd_inverse: matrix singular or near-singular");
  return spectral_apply(e, [](double lambda) { return 1.0 / lambda; });
}

/// Clamps the spectrum of a symmetric matrix into [floor, ceil]. Returns the
/// input unchanged when nothing needed clamping; sets *activated accordingly.
inline Matrix pd_safeguard(const Matrix& m, double floor, double ceil, bool* activated = nullptr) {
  require(is_symmetric(m), Errc::non_symmetric, "pd_safeguard: input not symmetric");
  require(floor > 0.0 && floor < ceil, Errc::bad_bounds, "pd_safeguard: need 0 < floor < ceil");
  SymEigen e = sym_eigen(m);
  bool any = false;
  for (double lambda : e.values) any = any || lambda < floor || lambda > ceil;
  if (activated) *activated = any;
  if (!any) return m;
  return spectral_apply(e, [floor, ceil](double lambda) { return std::clamp(lambda, floor, ceil); });
}

inline bool all_finite(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

inline bool all_finite(const Matrix& m) { return all_finite(m.data()); }

}  // namespace ingo

#endif  // INGO_LINALG_HPP
