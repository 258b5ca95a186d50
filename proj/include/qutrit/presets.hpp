#ifndef QUTRIT_PRESETS_HPP
#define QUTRIT_PRESETS_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qutrit/errors.hpp"
#include "qutrit/format.hpp"
#include "qutrit/sweep.hpp"

namespace qutrit {

/// A family of sweeps plotted together. `y_column` names the CSV column the
/// figure is about (J for fig1, negativity otherwise).
struct FigureSet {
  std::string name;
  std::string title;
  std::string y_column;
  std::vector<SweepResult> curves;
  Meta meta;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig1",  "fig2a", "fig2b", "fig3a", "fig3b",
                                                 "fig3c", "fig4a", "fig4b", "fig4c"};
  return names;
}

namespace detail {

struct CurveFamily {
  std::string title;
  std::string y_column;
  SweepSpec base;
  // Which parameter distinguishes the curves, and its values.
  std::string family_param;
  std::vector<double> family_values;
  std::function<void(SweepSpec&, double)> apply;
};

inline SweepSpec spec_of(SweepAxis vary, double start, double stop, int steps, double R, double Dz, double B,
                         double T) {
  SweepSpec s;
  s.vary = vary;
  s.start = start;
  s.stop = stop;
  s.steps = steps;
  s.fixed.R = R;
  s.fixed.Dz = Dz;
  s.fixed.B = B;
  s.fixed.gamma = 1.0;
  s.T = T;
  return s;
}

inline void set_R(SweepSpec& s, double v) { s.fixed.R = v; }
inline void set_B(SweepSpec& s, double v) { s.fixed.B = v; }
inline void set_T(SweepSpec& s, double v) { s.T = v; }

// Grids: fig1 uses a 1/64 step so R = 1.25 is an exact grid point; the
// temperature axis runs to 6 so the high-temperature tail is on record.
inline CurveFamily preset_family(std::string_view name) {
  const std::vector<double> temps = {0.04, 0.08, 0.12, 0.5};
  if (name == "fig1")
    return {"Herring-Flicker coupling J(R)", "J", spec_of(SweepAxis::R, 1.0 / 64.0, 8.0, 512, 0.5, 1.0, 1.0, 0.04),
            "", {}, nullptr};
  if (name == "fig2a")
    return {"negativity vs T for several R (B = Dz = 1)", "negativity",
            spec_of(SweepAxis::T, 0.02, 6.0, 300, 0.5, 1.0, 1.0, 0.0), "R", {0.3, 0.6, 0.9}, set_R};
  if (name == "fig2b")
    return {"negativity vs T for several B (Dz = 1, R = 0.5)", "negativity",
            spec_of(SweepAxis::T, 0.02, 6.0, 300, 0.5, 1.0, 0.0, 0.0), "B", {0.0, 0.4, 0.8, 1.2}, set_B};
  if (name == "fig3a")
    return {"negativity vs Dz for several T (R = B = 1)", "negativity",
            spec_of(SweepAxis::Dz, -4.0, 4.0, 801, 1.0, 0.0, 1.0, 0.08), "T", temps, set_T};
  if (name == "fig3b")
    return {"negativity vs Dz for several R (T = 0.08, B = 0.5)", "negativity",
            spec_of(SweepAxis::Dz, -4.0, 4.0, 801, 0.5, 0.0, 0.5, 0.08), "R", {0.1, 0.2, 0.3}, set_R};
  if (name == "fig3c")
    return {"negativity vs Dz for several B (T = 0.08, R = 0.5)", "negativity",
            spec_of(SweepAxis::Dz, -4.0, 4.0, 801, 0.5, 0.0, 0.5, 0.08), "B", {1.0, 1.2, 1.5}, set_B};
  if (name == "fig4a")
    return {"negativity vs R for several T (B = Dz = 1)", "negativity",
            spec_of(SweepAxis::R, 0.05, 8.0, 160, 0.5, 1.0, 1.0, 0.04), "T", temps, set_T};
  if (name == "fig4b")
    return {"negativity vs B for several T (R = Dz = 1)", "negativity",
            spec_of(SweepAxis::B, 0.0, 3.0, 301, 1.0, 1.0, 0.0, 0.04), "T", temps, set_T};
  if (name == "fig4c")
    return {"negativity vs B at T = 0 (R = Dz = 1)", "negativity",
            spec_of(SweepAxis::B, 0.0, 3.0, 301, 1.0, 1.0, 0.0, 0.0), "T", {0.0}, set_T};
  throw InvalidArgument("unknown figure preset '" + std::string(name) + "'");
}

}  // namespace detail

/// Runs every curve of a named preset in legend order.
inline FigureSet figure_preset(std::string_view name, unsigned threads = 1) {
  const detail::CurveFamily fam = detail::preset_family(name);
  FigureSet set{std::string(name), fam.title, fam.y_column, {}, {}};
  set.meta.emplace_back("preset", std::string(name));
  set.meta.emplace_back("title", fam.title);
  set.meta.emplace_back("tool_version", std::string(kToolVersion));
  set.meta.emplace_back("gamma", format_number(fam.base.fixed.gamma));

  if (fam.family_values.empty()) {
    SweepResult r = run_sweep(fam.base, threads);
    r.label = fam.y_column + "(" + std::string(axis_name(fam.base.vary)) + ")";
    set.curves.push_back(std::move(r));
    return set;
  }

  std::string family;
  for (double v : fam.family_values) {
    if (!family.empty()) family += ",";
    family += format_number(v);
  }
  set.meta.emplace_back("family_param", fam.family_param);
  set.meta.emplace_back("family_values", family);
  for (double v : fam.family_values) {
    SweepSpec s = fam.base;
    fam.apply(s, v);
    SweepResult r = run_sweep(s, threads);
    r.label = fam.family_param + "=" + format_number(v);
    set.curves.push_back(std::move(r));
  }
  return set;
}

}  // namespace qutrit

#endif  // QUTRIT_PRESETS_HPP
