#ifndef QUTRIT_CRITICAL_HPP
#define QUTRIT_CRITICAL_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "qutrit/entanglement.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/model.hpp"
#include "qutrit/sweep.hpp"
#include "qutrit/thermal.hpp"

namespace qutrit {

inline constexpr double kBisectionTolerance = 1e-8;
inline constexpr double kScanResolution = 1e-3;
inline constexpr double kOnsetThreshold = 1e-9;
inline constexpr double kDefaultFieldMax = 5.0;
inline constexpr double kDefaultDzMax = 10.0;

enum class CriticalKind { LevelCrossing, NegativityOnset, NegativityDeath };

inline std::string_view kind_name(CriticalKind k) {
  switch (k) {
    case CriticalKind::LevelCrossing: return "LevelCrossing";
    case CriticalKind::NegativityOnset: return "NegativityOnset";
    case CriticalKind::NegativityDeath: return "NegativityDeath";
  }
  return "?";
}

struct CriticalPoint {
  SweepAxis parameter = SweepAxis::B;
  double value = 0.0;
  CriticalKind kind = CriticalKind::LevelCrossing;
  double lo = 0.0;
  double hi = 0.0;
};

/// Labels (1-based level numbers) of the levels within the degeneracy window of
/// the ground energy. For r = 0 the Hamiltonian is diagonal in the product basis
/// and the labels are product-basis indices instead.
inline std::vector<int> ground_levels(const ModelParams& p) {
  std::vector<double> energies;
  if (effective_coupling(p).degenerate) {
    const Matrix h = hamiltonian_tensor(p);
    for (std::size_t i = 0; i < kDim; ++i) energies.push_back(h(i, i).real());
  } else {
    const AnalyticSpectrum s = analytic_spectrum(p);
    energies.assign(s.eps.begin(), s.eps.end());
  }
  const double emin = *std::min_element(energies.begin(), energies.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < energies.size(); ++i)
    if (energies[i] - emin < kGroundDegeneracyTolerance) out.push_back(static_cast<int>(i) + 1);
  return out;
}

inline double ground_negativity(const ModelParams& p) { return negativity(ground_state_mixture(p).rho).value; }

/// Scans B over [0, b_max] at T = 0 and bisects every change of the ground
/// level set down to a bracket of 1e-8. Crossings where the T = 0 negativity
/// drops to zero (or rises from zero) are tagged as death (onset).
inline std::vector<CriticalPoint> detect_critical_field(ModelParams p, double b_max = kDefaultFieldMax,
                                                        double scan_step = kScanResolution) {
  if (!(b_max > 0.0) || !(scan_step > 0.0)) throw InvalidArgument("detect_critical_field: bad scan window");
  auto levels_at = [&p](double b) {
    ModelParams q = p;
    q.B = b;
    return ground_levels(q);
  };

  std::vector<CriticalPoint> out;
  const int n = static_cast<int>(std::ceil(b_max / scan_step - 1e-9));
  double prev_b = 0.0;
  std::vector<int> prev = levels_at(prev_b);
  for (int k = 1; k <= n; ++k) {
    const double b = std::min(b_max, k * scan_step);
    std::vector<int> cur = levels_at(b);
    if (cur != prev) {
      double lo = prev_b;
      double hi = b;
      while (hi - lo > kBisectionTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (levels_at(mid) == prev) lo = mid;
        else hi = mid;
      }
      // Classify from the scan points: the bracket ends can sit inside the
      // degeneracy window, where the ground mixture still holds both levels.
      ModelParams below = p;
      below.B = prev_b;
      ModelParams above = p;
      above.B = b;
      const bool ent_below = ground_negativity(below) > kOnsetThreshold;
      const bool ent_above = ground_negativity(above) > kOnsetThreshold;
      CriticalKind kind = CriticalKind::LevelCrossing;
      if (ent_below && !ent_above) kind = CriticalKind::NegativityDeath;
      if (!ent_below && ent_above) kind = CriticalKind::NegativityOnset;
      out.push_back({SweepAxis::B, 0.5 * (lo + hi), kind, lo, hi});
    }
    prev = std::move(cur);
    prev_b = b;
  }
  return out;
}

/// Smallest Dz >= 0 at which the thermal negativity exceeds 1e-9, bracketed on
/// a 1e-3 grid and bisected to 1e-8. `value` is the upper bracket end, the
/// first point known to be entangled.
inline CriticalPoint detect_critical_dz(ModelParams p, double T, double dz_max = kDefaultDzMax,
                                        double scan_step = kScanResolution) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("detect_critical_dz: temperature must be positive");
  auto entangled = [&p, T](double dz) {
    ModelParams q = p;
    q.Dz = dz;
    return negativity(thermal_state(q, T).rho).value > kOnsetThreshold;
  };

  if (entangled(0.0)) throw NoOnset("detect_critical_dz: negativity is already nonzero at Dz = 0");
  const int n = static_cast<int>(std::ceil(dz_max / scan_step - 1e-9));
  double prev = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double dz = std::min(dz_max, k * scan_step);
    if (entangled(dz)) {
      double lo = prev;
      double hi = dz;
      while (hi - lo > kBisectionTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (entangled(mid)) hi = mid;
        else lo = mid;
      }
      return {SweepAxis::Dz, hi, CriticalKind::NegativityOnset, lo, hi};
    }
    prev = dz;
  }
  throw NoOnset("detect_critical_dz: negativity stays zero up to Dz = " + format_number(dz_max));
}

}  // namespace qutrit

#endif  // QUTRIT_CRITICAL_HPP
