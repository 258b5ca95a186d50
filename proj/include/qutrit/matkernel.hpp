#ifndef QUTRIT_MATKERNEL_HPP
#define QUTRIT_MATKERNEL_HPP

// Dense complex matrices for the 3x3 / 9x9 problems in this library, plus a
// cyclic Jacobi eigensolver for Hermitian input. Everything is O(n^3) and
// allocation-light; nothing here is tuned for large n.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qutrit/errors.hpp"

namespace qutrit {

using Complex = std::complex<double>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kJacobiRelativeOffNorm = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

/// Row-major dense complex matrix.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw DimensionMismatch("matrix entries: expected " + std::to_string(rows_ * cols_) +
                              ", got " + std::to_string(entries_.size()));
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return entries_; }

  std::vector<Complex> column(std::size_t j) const {
    std::vector<Complex> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

namespace detail {

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

inline void require_square(const Matrix& a, const char* op) {
  if (!a.is_square()) throw DimensionMismatch(std::string(op) + ": matrix is not square");
}

}  // namespace detail

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b, "add");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b, "subtract");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

inline Matrix operator*(Complex s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
  return out;
}

inline Matrix operator*(double s, const Matrix& a) { return Complex(s, 0.0) * a; }

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline Matrix scale(const Matrix& a, Complex s) { return s * a; }
inline Matrix add(const Matrix& a, const Matrix& b) { return a + b; }
inline Matrix matmul(const Matrix& a, const Matrix& b) { return a * b; }

inline Matrix adjoint(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

/// Entrywise complex conjugate (no transpose).
inline Matrix conjugate(const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = std::conj(a(i, j));
  return out;
}

inline Complex trace(const Matrix& a) {
  detail::require_square(a, "trace");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

/// Kronecker product; entry (i*b.rows+k, j*b.cols+l) = a(i,j) * b(k,l).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline Matrix outer_product(std::span<const Complex> ket, std::span<const Complex> bra) {
  Matrix out(ket.size(), bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) out(i, j) = ket[i] * std::conj(bra[j]);
  return out;
}

/// |psi><psi|
inline Matrix projector(std::span<const Complex> psi) { return outer_product(psi, psi); }

inline Matrix apply_conjugation(const Matrix& u, const Matrix& a) { return u * a * adjoint(u); }

inline std::vector<Complex> apply_to(const Matrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw DimensionMismatch("apply_to: vector length mismatch");
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

inline double max_abs(const Matrix& a) {
  double m = 0.0;
  for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

inline double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (const Complex& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

inline double vector_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline bool is_hermitian(const Matrix& a, double tol = kHermitianTolerance) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

inline bool is_finite(const Matrix& a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

/// Columns of `eigenvectors` are unit eigenvectors paired with ascending `eigenvalues`.
/// Inside a degenerate eigenspace the basis is whatever the sweep produced; compare
/// projectors, not individual vectors.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const {
    return eigenvectors * Matrix::diagonal(eigenvalues) * adjoint(eigenvectors);
  }
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each (p,q) rotation is a phase change that makes h(p,q) real followed by a
/// real Givens rotation, so the off-diagonal pair is zeroed exactly. Sweeps stop
/// once the off-diagonal Frobenius norm falls below 1e-14 * ||h||_F.
inline EigenDecomposition hermitian_eig(const Matrix& h) {
  detail::require_square(h, "hermitian_eig");
  if (!is_finite(h)) throw NotHermitian("hermitian_eig: non-finite entries");
  if (!is_hermitian(h)) throw NotHermitian("hermitian_eig: input is not Hermitian within 1e-12");

  const std::size_t n = h.rows();
  Matrix a = h;
  Matrix v = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double target = kJacobiRelativeOffNorm * frobenius_norm(h);
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > target) {
    if (++sweep > kJacobiMaxSweeps) {
      throw NoConvergence("hermitian_eig: no convergence after " +
                          std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const Complex phase = a(p, q) / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // G restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const Matrix& h) {
  return hermitian_eig(h).eigenvalues;
}

}  // namespace qutrit

#endif  // QUTRIT_MATKERNEL_HPP
