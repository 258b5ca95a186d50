#ifndef QUTRIT_ENTANGLEMENT_HPP
#define QUTRIT_ENTANGLEMENT_HPP

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qutrit/errors.hpp"
#include "qutrit/matkernel.hpp"
#include "qutrit/model.hpp"

namespace qutrit {

/// Eigenvalues of the partial transpose in [-1e-12, 0) are solver noise and count as zero.
inline constexpr double kNegativeEigenvalueThreshold = -1e-12;
inline constexpr double kStateTolerance = 1e-9;

enum class Subsystem { First, Second };

struct NegativityResult {
  double value = 0.0;
  std::vector<double> negative_eigenvalues;
  /// value > 1 + 1e-9, which no two-qutrit density matrix should produce.
  bool exceeds_bound = false;
};

/// For First: out((i,j),(k,l)) = rho((k,j),(i,l)) with (i,j) -> 3i+j.
inline Matrix partial_transpose(const Matrix& rho, Subsystem sub = Subsystem::First) {
  if (rho.rows() != kDim || rho.cols() != kDim) {
    throw DimensionMismatch("partial_transpose: expected 9x9, got " + std::to_string(rho.rows()) +
                            "x" + std::to_string(rho.cols()));
  }
  Matrix out(kDim, kDim);
  for (std::size_t i = 0; i < kSiteDim; ++i)
    for (std::size_t j = 0; j < kSiteDim; ++j)
      for (std::size_t k = 0; k < kSiteDim; ++k)
        for (std::size_t l = 0; l < kSiteDim; ++l) {
          const std::size_t row = 3 * i + j;
          const std::size_t col = 3 * k + l;
          out(row, col) = sub == Subsystem::First ? rho(3 * k + j, 3 * i + l)
                                                  : rho(3 * i + l, 3 * k + j);
        }
  return out;
}

namespace detail {

inline void require_density_matrix(const Matrix& rho) {
  if (rho.rows() != kDim || rho.cols() != kDim) throw InvalidState("negativity: expected a 9x9 density matrix");
  if (!is_finite(rho)) throw InvalidState("negativity: non-finite entries");
  if (!is_hermitian(rho, kStateTolerance)) throw InvalidState("negativity: matrix is not Hermitian");
  const Complex tr = trace(rho);
  if (std::abs(tr - Complex(1.0, 0.0)) > kStateTolerance) {
    throw InvalidState("negativity: trace " + std::to_string(tr.real()) + " differs from 1");
  }
  if (hermitian_eigenvalues(rho).front() < -kStateTolerance) {
    throw InvalidState("negativity: matrix is not positive semidefinite");
  }
}

}  // namespace detail

/// N(rho) = sum of |lambda| over the negative eigenvalues of rho^{T_1} (or T_2).
/// Normalized so the maximally entangled qutrit pair gives 1.
inline NegativityResult negativity(const Matrix& rho, Subsystem sub = Subsystem::First) {
  detail::require_density_matrix(rho);
  NegativityResult out;
  for (double lambda : hermitian_eigenvalues(partial_transpose(rho, sub))) {
    if (lambda < kNegativeEigenvalueThreshold) {
      out.negative_eigenvalues.push_back(lambda);
      out.value -= lambda;
    }
  }
  out.exceeds_bound = out.value > 1.0 + kStateTolerance;
  return out;
}

/// |N(rho^{T_1}) - N(rho^{T_2})|; zero up to solver noise for any state.
inline double subsystem_asymmetry(const Matrix& rho) {
  return std::abs(negativity(rho, Subsystem::First).value - negativity(rho, Subsystem::Second).value);
}

/// Negativity of a pure state whose support is a partial permutation of the
/// product basis (at most one nonzero coefficient per row index i and per
/// column index j of |i,j>). Such a state is in Schmidt form up to local
/// relabelling, so N = sum_{a<b} |c_a| |c_b|.
inline double pure_state_negativity_oracle(std::span<const Complex> coefficients) {
  if (coefficients.size() != kDim) throw DimensionMismatch("pure_state_negativity_oracle: expected 9 coefficients");
  if (std::abs(vector_norm(coefficients) - 1.0) > kStateTolerance) {
    throw InvalidState("pure_state_negativity_oracle: coefficients are not a unit vector");
  }
  constexpr double kSupportCutoff = 1e-12;
  std::array<bool, kSiteDim> first_used{};
  std::array<bool, kSiteDim> second_used{};
  std::vector<double> amplitudes;
  for (std::size_t idx = 0; idx < kDim; ++idx) {
    const double a = std::abs(coefficients[idx]);
    if (a <= kSupportCutoff) continue;
    const std::size_t i = idx / kSiteDim;
    const std::size_t j = idx % kSiteDim;
    if (first_used[i] || second_used[j]) {
      throw UnsupportedStructure("pure_state_negativity_oracle: support is not a product-basis matching");
    }
    first_used[i] = second_used[j] = true;
    amplitudes.push_back(a);
  }
  double n = 0.0;
  for (std::size_t a = 0; a < amplitudes.size(); ++a)
    for (std::size_t b = a + 1; b < amplitudes.size(); ++b) n += amplitudes[a] * amplitudes[b];
  return n;
}

}  // namespace qutrit

#endif  // QUTRIT_ENTANGLEMENT_HPP
