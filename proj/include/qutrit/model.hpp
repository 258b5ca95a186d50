#ifndef QUTRIT_MODEL_HPP
#define QUTRIT_MODEL_HPP

// Two spin-1 sites coupled by an XXZ exchange J(x x + y y + gamma z z), a z-axis
// Dzyaloshinskii-Moriya term Dz(x1 y2 - y1 x2) and a uniform field B(z1 + z2).
//
// Basis ordering: the composite index is kron(site1, site2), site 1 slow. The
// state labels |m1,m2> used by analytic_spectrum() follow the listing
// |-1,-1>, |-1,0>, ..., |1,1> position by position, i.e. label (m1,m2) sits at
// index 3(m1+1)+(m2+1). With the sigma^z = diag(1,0,-1) matrices this puts the
// gamma*J + 2B level at index 0, so the labels are mirrored relative to the
// sigma^z eigenvalue sign. The spectrum does not depend on labelling.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "qutrit/errors.hpp"
#include "qutrit/matkernel.hpp"

namespace qutrit {

inline constexpr std::size_t kSiteDim = 3;
inline constexpr std::size_t kDim = 9;

/// Leading Herring-Flicker prefactor and the distance beyond which J(R) is
/// treated as negligible when flagging inputs.
inline constexpr double kHerringFlickerPrefactor = 1.642;
inline constexpr double kPhysicalRangeMax = 6.0;

struct ModelParams {
  double R = 0.5;
  double gamma = 1.0;
  double Dz = 1.0;
  double B = 0.0;
  std::optional<double> j_override;

  /// Exchange J: the override when present, otherwise J(R).
  double coupling() const;

  /// Distance outside (0, 6): accepted but worth flagging.
  bool outside_physical_range() const {
    return !j_override && (R <= 0.0 || R >= kPhysicalRangeMax);
  }
};

/// J(R) = 1.642 exp(-2R) R^{5/2}. The O(R^2 exp(-2R)) remainder is not modelled.
inline double hf_coupling(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw DomainError("hf_coupling: R must be a positive finite distance, got " + std::to_string(R));
  }
  return kHerringFlickerPrefactor * std::exp(-2.0 * R) * std::pow(R, 2.5);
}

inline double ModelParams::coupling() const { return j_override ? *j_override : hf_coupling(R); }

/// r = sqrt(Dz^2 + J^2) and theta = atan2(Dz, J), so that r e^{i theta} = J + i Dz.
struct EffectiveCoupling {
  double r = 0.0;
  double theta = 0.0;
  /// r == 0; theta is reported as 0 and carries no meaning.
  bool degenerate = false;
};

inline EffectiveCoupling effective_coupling(const ModelParams& p) {
  const double J = p.coupling();
  const double r = std::hypot(p.Dz, J);
  if (r == 0.0) return {0.0, 0.0, true};
  return {r, std::atan2(p.Dz, J), false};
}

struct SpinOperators {
  Matrix sx;
  Matrix sy;
  Matrix sz;
};

inline SpinOperators spin_operators() {
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  SpinOperators s{
      Matrix(3, 3, {0.0, h, 0.0, h, 0.0, h, 0.0, h, 0.0}),
      Matrix(3, 3, {0.0, -i * h, 0.0, i * h, 0.0, -i * h, 0.0, i * h, 0.0}),
      Matrix(3, 3, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0}),
  };
  return s;
}

/// Composite index of the state labelled |m1,m2>, m in {-1,0,1}.
constexpr std::size_t basis_index(int m1, int m2) {
  return static_cast<std::size_t>(3 * (m1 + 1) + (m2 + 1));
}

/// Builds H from Kronecker products of the spin-1 matrices.
inline Matrix hamiltonian_tensor(const ModelParams& p) {
  const SpinOperators s = spin_operators();
  const Matrix id = Matrix::identity(kSiteDim);
  const double J = p.coupling();

  const Matrix exchange = kron(s.sx, s.sx) + kron(s.sy, s.sy) + p.gamma * kron(s.sz, s.sz);
  const Matrix dm = kron(s.sx, s.sy) - kron(s.sy, s.sx);
  const Matrix zeeman = kron(s.sz, id) + kron(id, s.sz);
  return J * exchange + p.Dz * dm + p.B * zeeman;
}

/// Writes out the 9x9 matrix element by element in terms of r e^{+-i theta}.
inline Matrix hamiltonian_closed_form(const ModelParams& p) {
  const double J = p.coupling();
  const EffectiveCoupling ec = effective_coupling(p);
  const double gj = p.gamma * J;
  const Complex up = std::polar(ec.r, ec.theta);
  const Complex down = std::conj(up);

  Matrix h(kDim, kDim);
  h(0, 0) = gj + 2.0 * p.B;
  h(1, 1) = p.B;
  h(2, 2) = -gj;
  h(3, 3) = p.B;
  h(4, 4) = 0.0;
  h(5, 5) = -p.B;
  h(6, 6) = -gj;
  h(7, 7) = -p.B;
  h(8, 8) = gj - 2.0 * p.B;

  h(1, 3) = up;
  h(3, 1) = down;
  h(2, 4) = up;
  h(4, 2) = down;
  h(4, 6) = up;
  h(6, 4) = down;
  h(5, 7) = up;
  h(7, 5) = down;
  return h;
}

/// Which sign to attach to the ninth closed-form level. AsPrinted reproduces the
/// eps_{8,9} = (r/2) chi_{2,1} reading; it exists so the cross-checks can show it
/// is inconsistent with the numeric spectrum.
enum class Epsilon9Sign { Corrected, AsPrinted };

/// Closed-form eigenpairs. Index k holds level k+1:
///   eps1,2 = B +- r        eps3,4 = gamma J +- 2B    eps5 = -gamma J
///   eps6,7 = -B +- r       eps8 = (r/2) chi2         eps9 = -(r/2) chi1
/// with chi1,2 = (sqrt(gamma^2 J^2 + 8 r^2) +- gamma J) / r and chi1 chi2 = 8.
struct AnalyticSpectrum {
  std::array<double, kDim> eps{};
  double chi1 = 0.0;
  double chi2 = 0.0;
  std::array<std::array<Complex, kDim>, kDim> vecs{};

  double ground_energy() const {
    double m = eps[0];
    for (double e : eps) m = std::min(m, e);
    return m;
  }
};

inline AnalyticSpectrum analytic_spectrum(const ModelParams& p,
                                          Epsilon9Sign sign = Epsilon9Sign::Corrected) {
  const double J = p.coupling();
  const EffectiveCoupling ec = effective_coupling(p);
  if (ec.degenerate) {
    throw DegenerateCoupling("analytic_spectrum: r = 0 (J = Dz = 0); use the numeric spectrum");
  }
  const double r = ec.r;
  const double gj = p.gamma * J;
  const double root = std::sqrt(gj * gj + 8.0 * r * r);

  AnalyticSpectrum s;
  // Take the difference branch from the product identity to avoid cancellation.
  if (gj >= 0.0) {
    s.chi1 = (root + gj) / r;
    s.chi2 = 8.0 / s.chi1;
  } else {
    s.chi2 = (root - gj) / r;
    s.chi1 = 8.0 / s.chi2;
  }

  s.eps = {p.B + r,       p.B - r,        gj + 2.0 * p.B,
           gj - 2.0 * p.B, -gj,            -p.B + r,
           -p.B - r,       0.5 * r * s.chi2,
           (sign == Epsilon9Sign::Corrected ? -0.5 : 0.5) * r * s.chi1};

  const double h = 1.0 / std::numbers::sqrt2;
  const Complex e1 = std::polar(1.0, ec.theta);
  const Complex e2 = std::polar(1.0, 2.0 * ec.theta);
  auto& v = s.vecs;

  v[0][basis_index(-1, 0)] = e1 * h;
  v[0][basis_index(0, -1)] = h;
  v[1][basis_index(-1, 0)] = -e1 * h;
  v[1][basis_index(0, -1)] = h;

  v[2][basis_index(-1, -1)] = 1.0;
  v[3][basis_index(1, 1)] = 1.0;

  v[4][basis_index(-1, 1)] = -e2 * h;
  v[4][basis_index(1, -1)] = h;

  v[5][basis_index(0, 1)] = e1 * h;
  v[5][basis_index(1, 0)] = h;
  v[6][basis_index(0, 1)] = -e1 * h;
  v[6][basis_index(1, 0)] = h;

  const double n1 = 1.0 / std::sqrt(s.chi1 * s.chi1 + 8.0);
  const double n2 = 1.0 / std::sqrt(s.chi2 * s.chi2 + 8.0);
  v[7][basis_index(-1, 1)] = 2.0 * n1 * e2;
  v[7][basis_index(0, 0)] = n1 * s.chi1 * e1;
  v[7][basis_index(1, -1)] = 2.0 * n1;
  v[8][basis_index(-1, 1)] = 2.0 * n2 * e2;
  v[8][basis_index(0, 0)] = -n2 * s.chi2 * e1;
  v[8][basis_index(1, -1)] = 2.0 * n2;
  return s;
}

}  // namespace qutrit

#endif  // QUTRIT_MODEL_HPP
