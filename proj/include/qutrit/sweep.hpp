#ifndef QUTRIT_SWEEP_HPP
#define QUTRIT_SWEEP_HPP

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "qutrit/entanglement.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/format.hpp"
#include "qutrit/model.hpp"
#include "qutrit/thermal.hpp"

namespace qutrit {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kSignConventionNote =
    "eps9 = -(r/2) chi1; basis index 3(m1+1)+(m2+1) with sigma^z = diag(1,0,-1), "
    "so |-1,-1> carries gamma J + 2B";

enum class SweepAxis { T, B, Dz, R };

inline std::string_view axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::T: return "T";
    case SweepAxis::B: return "B";
    case SweepAxis::Dz: return "Dz";
    case SweepAxis::R: return "R";
  }
  return "?";
}

inline SweepAxis parse_axis(std::string_view s) {
  if (s == "T") return SweepAxis::T;
  if (s == "B") return SweepAxis::B;
  if (s == "Dz") return SweepAxis::Dz;
  if (s == "R") return SweepAxis::R;
  throw InvalidArgument("unknown sweep axis '" + std::string(s) + "' (expected T, B, Dz or R)");
}

/// Ordered key/value pairs echoed next to every emitted artifact.
using Meta = std::vector<std::pair<std::string, std::string>>;

struct SweepSpec {
  SweepAxis vary = SweepAxis::T;
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;
  ModelParams fixed;
  /// Temperature for sweeps over B, Dz or R. Zero selects the ground-state mixture.
  double T = 0.0;
};

inline void validate_spec(const SweepSpec& s) {
  if (!std::isfinite(s.start) || !std::isfinite(s.stop)) throw InvalidArgument("sweep: non-finite range");
  if (!(s.start < s.stop)) throw InvalidArgument("sweep: start must be below stop");
  if (s.steps < 2) throw InvalidArgument("sweep: at least two steps are required");
  if (s.vary == SweepAxis::T && !(s.start > 0.0)) throw InvalidArgument("sweep: temperature grid must start above 0");
  if (s.vary != SweepAxis::T && (!(s.T >= 0.0) || !std::isfinite(s.T))) {
    throw InvalidArgument("sweep: fixed temperature must be finite and non-negative");
  }
  if (s.vary == SweepAxis::R && s.fixed.j_override) {
    throw InvalidArgument("sweep: cannot vary R while J is overridden");
  }
  if (s.vary == SweepAxis::R && !(s.start > 0.0)) throw InvalidArgument("sweep: R grid must start above 0");
}

/// start + k * (stop - start) / (steps - 1); the last point is exactly `stop`.
inline double grid_value(const SweepSpec& s, int k) {
  if (k == s.steps - 1) return s.stop;
  return s.start + k * ((s.stop - s.start) / (s.steps - 1));
}

/// Parameters and temperature for grid point k.
inline std::pair<ModelParams, double> grid_point(const SweepSpec& s, int k) {
  ModelParams p = s.fixed;
  double T = s.T;
  const double v = grid_value(s, k);
  switch (s.vary) {
    case SweepAxis::T: T = v; break;
    case SweepAxis::B: p.B = v; break;
    case SweepAxis::Dz: p.Dz = v; break;
    case SweepAxis::R: p.R = v; break;
  }
  return {p, T};
}

struct SweepRow {
  std::string grid_param;
  double grid_value = 0.0;
  double T = 0.0;
  ModelParams params;
  double J = 0.0;
  double r = 0.0;
  double theta = 0.0;
  /// Absent at T = 0, and non-finite once exp(-eps_min / T) overflows.
  std::optional<double> Z;
  double ground_energy = 0.0;
  double negativity = 0.0;
};

/// Everything a sweep row reports for one (p, T).
inline SweepRow evaluate_point(const ModelParams& p, double T) {
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("temperature must be finite and non-negative");
  SweepRow row;
  row.grid_param = "point";
  row.T = T;
  row.params = p;
  row.J = p.coupling();
  const EffectiveCoupling ec = effective_coupling(p);
  row.r = ec.r;
  row.theta = ec.theta;
  row.ground_energy = ec.degenerate ? hermitian_eigenvalues(hamiltonian_tensor(p)).front()
                                    : analytic_spectrum(p).ground_energy();
  const ThermalState state = thermal_state(p, T);
  row.Z = state.partition();
  row.negativity = negativity(state.rho).value;
  return row;
}

struct SweepResult {
  SweepSpec spec;
  /// Curve name used in SVG legends, e.g. "R=0.3".
  std::string label;
  std::vector<SweepRow> rows;
  Meta meta;
};

inline Meta sweep_meta(const SweepSpec& s) {
  const auto num = format_number;
  Meta m;
  m.emplace_back("tool_version", std::string(kToolVersion));
  m.emplace_back("vary", std::string(axis_name(s.vary)));
  m.emplace_back("from", num(s.start));
  m.emplace_back("to", num(s.stop));
  m.emplace_back("steps", std::to_string(s.steps));
  m.emplace_back("gamma", num(s.fixed.gamma));
  if (s.fixed.j_override) {
    m.emplace_back("J_override", num(*s.fixed.j_override));
  } else if (s.vary != SweepAxis::R) {
    m.emplace_back("R", num(s.fixed.R));
  }
  if (s.vary != SweepAxis::Dz) m.emplace_back("Dz", num(s.fixed.Dz));
  if (s.vary != SweepAxis::B) m.emplace_back("B", num(s.fixed.B));
  if (s.vary != SweepAxis::T) m.emplace_back("T", num(s.T));
  m.emplace_back("sign_convention", std::string(kSignConventionNote));
  return m;
}

/// Evaluates every grid point. Work is split over `threads` workers but rows
/// are stored by grid index, so the result does not depend on the thread count.
/// The first failing grid point (lowest index) is rethrown with its grid value.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1) {
  validate_spec(spec);
  const int n = spec.steps;
  std::vector<SweepRow> rows(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));

  auto work = [&](unsigned worker, unsigned stride) {
    for (int k = static_cast<int>(worker); k < n; k += static_cast<int>(stride)) {
      try {
        auto [p, T] = grid_point(spec, k);
        SweepRow row = evaluate_point(p, T);
        row.grid_param = std::string(axis_name(spec.vary));
        row.grid_value = grid_value(spec, k);
        rows[static_cast<std::size_t>(k)] = std::move(row);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  };

  threads = std::max(1u, std::min(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  for (int k = 0; k < n; ++k) {
    if (!errors[static_cast<std::size_t>(k)]) continue;
    const std::string where = "sweep point " + std::string(axis_name(spec.vary)) + "=" +
                              std::to_string(grid_value(spec, k)) + ": ";
    try {
      std::rethrow_exception(errors[static_cast<std::size_t>(k)]);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(where + e.what());
    } catch (const NumericalFailure& e) {
      throw NumericalFailure(where + e.what());
    }
  }
  return {spec, std::string(axis_name(spec.vary)) + " sweep", std::move(rows), sweep_meta(spec)};
}

}  // namespace qutrit

#endif  // QUTRIT_SWEEP_HPP
