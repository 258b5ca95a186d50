#ifndef QUTRIT_THERMAL_HPP
#define QUTRIT_THERMAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qutrit/errors.hpp"
#include "qutrit/matkernel.hpp"
#include "qutrit/model.hpp"

namespace qutrit {

/// Levels within this energy window of the minimum are treated as degenerate ground states.
inline constexpr double kGroundDegeneracyTolerance = 1e-9;

/// rho = exp(-beta H) / Z with k_B = 1. At T = 0 beta is +inf and the partition
/// function is not defined.
struct ThermalState {
  double beta = 0.0;
  std::optional<double> log_z;
  Matrix rho;

  double temperature() const { return std::isinf(beta) ? 0.0 : 1.0 / beta; }

  /// Z itself; overflows to +inf for very large beta * |eps_min|.
  std::optional<double> partition() const {
    if (!log_z) return std::nullopt;
    return std::exp(*log_z);
  }
};

namespace detail {

inline double inverse_temperature(double T, const char* op) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw DomainError(std::string(op) + ": temperature must be positive and finite, got " + std::to_string(T));
  }
  return 1.0 / T;
}

struct ShiftedWeights {
  std::vector<double> weights;  // normalized Boltzmann weights
  double log_z = 0.0;
};

// Every exponent is shifted by beta * eps_min before exponentiating.
inline ShiftedWeights boltzmann(std::span<const double> energies, double beta) {
  const double emin = *std::min_element(energies.begin(), energies.end());
  ShiftedWeights out{std::vector<double>(energies.size()), 0.0};
  double sum = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    out.weights[i] = std::exp(-beta * (energies[i] - emin));
    sum += out.weights[i];
  }
  for (double& w : out.weights) w /= sum;
  out.log_z = std::log(sum) - beta * emin;
  return out;
}

}  // namespace detail

inline double log_partition_function(std::span<const double> energies, double T) {
  const double beta = detail::inverse_temperature(T, "partition_function");
  return detail::boltzmann(energies, beta).log_z;
}

inline double partition_function(std::span<const double> energies, double T) {
  return std::exp(log_partition_function(energies, T));
}

/// Z = sum_i exp(-eps_i / T) over the numerically diagonalized spectrum.
inline double partition_function(const ModelParams& p, double T) {
  detail::inverse_temperature(T, "partition_function");
  const std::vector<double> eps = hermitian_eigenvalues(hamiltonian_tensor(p));
  return partition_function(eps, T);
}

/// rho = V diag(w) V^dagger from the Jacobi eigendecomposition of the tensor-built H.
inline ThermalState gibbs_numeric(const ModelParams& p, double T) {
  const double beta = detail::inverse_temperature(T, "gibbs_numeric");
  const EigenDecomposition eig = hermitian_eig(hamiltonian_tensor(p));
  const detail::ShiftedWeights w = detail::boltzmann(eig.eigenvalues, beta);
  const Matrix rho = eig.eigenvectors * Matrix::diagonal(w.weights) * adjoint(eig.eigenvectors);
  return {beta, w.log_z, rho};
}

/// Assembles rho from the closed-form element families:
///
///   rho11 = e^{-b(2B + gJ)}                 rho99 = e^{b(2B - gJ)}
///   rho22 = rho44 = e^{-bB} cosh(br)        rho66 = rho88 = e^{bB} cosh(br)
///   rho24 = -e^{-bB} sinh(br)               rho68 = -e^{bB} sinh(br)
///   rho33 = rho77 = e^{bgJ}/2 + 4 e^{-br chi2/2}/(chi1^2+8) + 4 e^{br chi1/2}/(chi2^2+8)
///   rho55 = chi1^2 e^{-br chi2/2}/(chi1^2+8) + chi2^2 e^{br chi1/2}/(chi2^2+8)
///   rho37 = (-e^{bgJ} + 8 e^{-br chi2/2}/(chi1^2+8) + 8 e^{br chi1/2}/(chi2^2+8)) / 2
///   rho35 = rho57 = -4 e^{bgJ/2} sinh(br(chi1+chi2)/4) / (chi1+chi2)
///
/// with phases e^{i theta} on (24, 35, 57, 68) and e^{2 i theta} on 37, all
/// divided by Z = trace. Every exponential is evaluated relative to e^{-b eps_min}.
inline ThermalState gibbs_analytic(const ModelParams& p, double T) {
  const double beta = detail::inverse_temperature(T, "gibbs_analytic");
  const EffectiveCoupling ec = effective_coupling(p);
  if (ec.degenerate) throw DegenerateCoupling("gibbs_analytic: r = 0; use gibbs_numeric");

  const AnalyticSpectrum spec = analytic_spectrum(p);
  const double shift = beta * spec.ground_energy();
  auto ex = [shift](double exponent) { return std::exp(exponent + shift); };

  const double b = beta;
  const double B = p.B;
  const double r = ec.r;
  const double gj = p.gamma * p.coupling();
  const double c1 = spec.chi1;
  const double c2 = spec.chi2;
  const double d1 = c1 * c1 + 8.0;
  const double d2 = c2 * c2 + 8.0;

  const double upper = ex(-b * r * c2 / 2.0);  // level eps8
  const double lower = ex(b * r * c1 / 2.0);   // level eps9
  const double half_span = b * r * (c1 + c2) / 4.0;

  const double rho11 = ex(-b * (2.0 * B + gj));
  const double rho22 = 0.5 * (ex(-b * B + b * r) + ex(-b * B - b * r));
  const double rho33 = 0.5 * ex(b * gj) + 4.0 * upper / d1 + 4.0 * lower / d2;
  const double rho55 = c1 * c1 * upper / d1 + c2 * c2 * lower / d2;
  const double rho37 = 0.5 * (-ex(b * gj) + 8.0 * upper / d1 + 8.0 * lower / d2);
  const double rho35 = -2.0 * (ex(b * gj / 2.0 + half_span) - ex(b * gj / 2.0 - half_span)) / (c1 + c2);
  const double rho66 = 0.5 * (ex(b * B + b * r) + ex(b * B - b * r));
  const double rho24 = -0.5 * (ex(-b * B + b * r) - ex(-b * B - b * r));
  const double rho68 = -0.5 * (ex(b * B + b * r) - ex(b * B - b * r));
  const double rho99 = ex(b * (2.0 * B - gj));

  const Complex e1 = std::polar(1.0, ec.theta);
  const Complex e2 = std::polar(1.0, 2.0 * ec.theta);

  Matrix m(kDim, kDim);
  m(0, 0) = rho11;
  m(1, 1) = rho22;
  m(3, 3) = rho22;
  m(1, 3) = e1 * rho24;
  m(3, 1) = std::conj(e1) * rho24;
  m(2, 2) = rho33;
  m(6, 6) = rho33;
  m(4, 4) = rho55;
  m(2, 4) = e1 * rho35;
  m(4, 2) = std::conj(e1) * rho35;
  m(4, 6) = e1 * rho35;
  m(6, 4) = std::conj(e1) * rho35;
  m(2, 6) = e2 * rho37;
  m(6, 2) = std::conj(e2) * rho37;
  m(5, 5) = rho66;
  m(7, 7) = rho66;
  m(5, 7) = e1 * rho68;
  m(7, 5) = std::conj(e1) * rho68;
  m(8, 8) = rho99;

  const double z_shifted = trace(m).real();
  return {beta, std::log(z_shifted) - shift, (1.0 / z_shifted) * m};
}

/// T -> 0 limit: equal mixture of every eigenvector whose energy lies within
/// 1e-9 of the minimum. At a level crossing this has rank 2 or more.
inline ThermalState ground_state_mixture(const ModelParams& p) {
  const EigenDecomposition eig = hermitian_eig(hamiltonian_tensor(p));
  const double emin = eig.eigenvalues.front();
  Matrix rho(kDim, kDim);
  std::size_t count = 0;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] - emin >= kGroundDegeneracyTolerance) break;
    const std::vector<Complex> v = eig.eigenvectors.column(k);
    rho = rho + projector(v);
    ++count;
  }
  return {std::numeric_limits<double>::infinity(), std::nullopt,
          (1.0 / static_cast<double>(count)) * rho};
}

/// Dispatch used by sweeps: ground mixture at T = 0, closed forms when r > 0,
/// numeric exponentiation otherwise.
inline ThermalState thermal_state(const ModelParams& p, double T) {
  if (T == 0.0) return ground_state_mixture(p);
  if (effective_coupling(p).degenerate) return gibbs_numeric(p, T);
  return gibbs_analytic(p, T);
}

}  // namespace qutrit

#endif  // QUTRIT_THERMAL_HPP
