#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qutrit/qutrit.hpp"

using namespace qutrit;

namespace {

ModelParams at(double R, double gamma, double Dz, double B) {
  ModelParams p;
  p.R = R;
  p.gamma = gamma;
  p.Dz = Dz;
  p.B = B;
  return p;
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream os;
  write_csv(os, std::span<const SweepResult>(&r, 1));
  return os.str();
}

SweepSpec t_sweep() {
  SweepSpec s;
  s.vary = SweepAxis::T;
  s.start = 0.05;
  s.stop = 3.0;
  s.steps = 40;
  s.fixed = at(0.5, 1.0, 1.0, 0.0);
  return s;
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(std::nan("")), "");
  EXPECT_EQ(std::stod(format_number(0.10678338450344795)), 0.10678338450344795);
}

TEST(Sweep, GridEndpointsExact) {
  SweepSpec s = t_sweep();
  s.start = 0.1;
  s.stop = 0.7;
  s.steps = 7;
  EXPECT_EQ(grid_value(s, 0), 0.1);
  EXPECT_EQ(grid_value(s, 6), 0.7);
}

TEST(Sweep, SpecValidation) {
  SweepSpec s = t_sweep();
  s.steps = 1;
  EXPECT_THROW(run_sweep(s), InvalidArgument);
  s = t_sweep();
  s.start = 0.0;
  EXPECT_THROW(run_sweep(s), InvalidArgument);
  s = t_sweep();
  s.stop = s.start;
  EXPECT_THROW(run_sweep(s), InvalidArgument);
  s = t_sweep();
  s.vary = SweepAxis::R;
  s.T = 0.1;
  s.fixed.j_override = 0.2;
  EXPECT_THROW(run_sweep(s), InvalidArgument);
  s = t_sweep();
  s.vary = SweepAxis::B;
  s.T = -1.0;
  EXPECT_THROW(run_sweep(s), InvalidArgument);
  EXPECT_THROW(parse_axis("X"), InvalidArgument);
}

TEST(Sweep, ThreadCountDoesNotChangeOutput) {
  const std::string one = csv_of(run_sweep(t_sweep(), 1));
  for (unsigned t : {2u, 3u, 8u, 64u}) EXPECT_EQ(csv_of(run_sweep(t_sweep(), t)), one);
}

TEST(Sweep, RowsMatchPointEvaluation) {
  const SweepResult r = run_sweep(t_sweep(), 4);
  ASSERT_EQ(r.rows.size(), 40u);
  for (int k = 0; k < 40; k += 13) {
    const SweepRow ref = evaluate_point(t_sweep().fixed, grid_value(t_sweep(), k));
    EXPECT_EQ(r.rows[k].negativity, ref.negativity);
    EXPECT_EQ(r.rows[k].grid_param, "T");
  }
}

TEST(Sweep, RowInvariants) {
  for (const char* name : {"fig2a", "fig3a", "fig4a", "fig4c"}) {
    for (const SweepResult& c : figure_preset(name).curves) {
      ASSERT_EQ(c.rows.size(), static_cast<std::size_t>(c.spec.steps));
      for (std::size_t k = 0; k < c.rows.size(); ++k) {
        EXPECT_GE(c.rows[k].negativity, 0.0);
        EXPECT_LE(c.rows[k].negativity, 1.0);
        if (k > 0) {
          EXPECT_LT(c.rows[k - 1].grid_value, c.rows[k].grid_value);
        }
      }
    }
  }
}

TEST(Sweep, TemperatureSweepAtDefaults) {
  SweepSpec s = t_sweep();
  s.start = 0.04;
  s.stop = 3.0;
  s.steps = 75;
  const SweepResult r = run_sweep(s);
  // Low-T value is the corrected closed form 0.965988 (not 0.9673, see notes).
  EXPECT_NEAR(r.rows.front().negativity, 0.965987501203036, 1e-4);
  for (std::size_t k = 1; k < r.rows.size(); ++k) EXPECT_LE(r.rows[k].negativity, r.rows[k - 1].negativity);
  EXPECT_EQ(r.rows.back().negativity, 0.0);
}

TEST(Sweep, NegativityFlattensBeyondSixBohrRadii) {
  // The example bound |N(7) - N(8)| < 1e-4 does not hold at T = 0.04; the
  // exact gap (numpy expm + brute-force PT) is 4.495e-4. J itself is below 1e-3.
  SweepSpec s;
  s.vary = SweepAxis::R;
  s.start = 7.0;
  s.stop = 8.0;
  s.steps = 2;
  s.fixed = at(1.0, 1.0, 1.0, 1.0);
  s.T = 0.04;
  const SweepResult r = run_sweep(s);
  const double gap = std::abs(r.rows[0].negativity - r.rows[1].negativity);
  EXPECT_NEAR(r.rows[0].negativity, 0.10410734129411685, 1e-10);
  EXPECT_NEAR(r.rows[1].negativity, 0.10365783632732989, 1e-10);
  EXPECT_NEAR(gap, 4.495049667869594e-4, 1e-10);
  EXPECT_LT(r.rows[0].J, 1e-3);
}

TEST(Critical, NoStructureWithoutCoupling) {
  ModelParams p;
  p.j_override = 0.0;
  p.Dz = 0.0;
  for (const CriticalPoint& c : detect_critical_field(p, 2.0)) EXPECT_EQ(c.kind, CriticalKind::LevelCrossing);
  for (double b : {0.0, 0.5, 1.5}) {
    p.B = b;
    EXPECT_EQ(ground_negativity(p), 0.0);
  }
}

TEST(Sweep, HighTemperatureNegativityIsExactlyZero) {
  SweepSpec s = t_sweep();
  s.start = 1.0;
  s.stop = 6.0;
  for (const SweepRow& row : run_sweep(s).rows) EXPECT_EQ(row.negativity, 0.0) << row.T;
}

TEST(Sweep, FailingPointReportsGridValue) {
  SweepSpec s;
  s.vary = SweepAxis::Dz;
  s.start = -1.0;
  s.stop = 1.0;
  s.steps = 3;
  s.T = 0.5;
  s.fixed.j_override = 0.0;  // r = 0 at Dz = 0: handled numerically, must not throw
  EXPECT_NO_THROW(run_sweep(s));
}

TEST(Csv, HeaderAndEmptyFields) {
  ModelParams p;
  p.j_override = 0.3;
  const SweepRow row = evaluate_point(p, 0.0);
  const std::string line = csv_row(row);
  // grid_value, R and Z are blank for a T = 0 point with J overridden.
  EXPECT_EQ(line.rfind("point,,0,0,1,,1,0.3,", 0), 0u) << line;
  EXPECT_NE(line.find(",,"), std::string::npos);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 12);
  std::ostringstream os;
  write_csv(os, {});
  EXPECT_EQ(os.str(), std::string(kCsvHeader) + "\n");
}

TEST(Csv, IoErrorOnBadPath) {
  const SweepResult r = run_sweep(t_sweep());
  EXPECT_THROW(emit_csv(r, "/nonexistent-dir/out.csv"), IoError);
}

TEST(Critical, FieldCrossingsAtReferencePoint) {
  const ModelParams p = at(1.0, 1.0, 1.0, 0.0);
  // Closed-form crossings: eps7 = eps9 at B = r(chi1/2 - 1); eps7 = eps4 at B = gamma J + r.
  const AnalyticSpectrum s = analytic_spectrum(p);
  const double r = effective_coupling(p).r;
  const double b1 = r * (s.chi1 / 2 - 1);
  const double b2 = hf_coupling(1.0) + r;
  EXPECT_NEAR(b1, 0.5396825388698632, 1e-13);
  EXPECT_NEAR(b2, 1.2466139976702169, 1e-13);

  const std::vector<CriticalPoint> c = detect_critical_field(p, 3.0);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(c[0].value, b1, 1e-6);
  EXPECT_NEAR(c[1].value, b2, 1e-6);
  EXPECT_LE(c[0].hi - c[0].lo, 1e-8);
  EXPECT_EQ(c[0].kind, CriticalKind::LevelCrossing);
  EXPECT_EQ(c[1].kind, CriticalKind::NegativityDeath);

  // Plateaus between the crossings.
  ModelParams q = p;
  q.B = 0.2;
  EXPECT_NEAR(ground_negativity(q), 0.9741540560184561, 1e-10);
  q.B = 0.9;
  EXPECT_NEAR(ground_negativity(q), 0.5, 1e-12);
  q.B = 2.0;
  EXPECT_EQ(ground_negativity(q), 0.0);
}

TEST(Critical, DzOnset) {
  const CriticalPoint c = detect_critical_dz(at(0.3, 1.0, 0.0, 0.5), 0.08);
  EXPECT_NEAR(c.value, 0.04960563, 1e-6);
  EXPECT_EQ(c.kind, CriticalKind::NegativityOnset);
  EXPECT_THROW(detect_critical_dz(at(0.5, 1.0, 0.0, 0.5), 0.08), NoOnset);  // entangled at Dz = 0
  EXPECT_THROW(detect_critical_dz(at(0.5, 1.0, 0.0, 1.5), 0.08, 0.2), NoOnset);  // window too short
  EXPECT_THROW(detect_critical_dz(at(0.5, 1.0, 0.0, 1.5), 0.0), DomainError);
}

TEST(Critical, OnsetOrderingInRAndB) {
  // Frozen from an independent numpy scan at T = 0.08.
  const double t = 0.08;
  EXPECT_NEAR(detect_critical_dz(at(0.1, 1, 0, 1.0), t).value, 0.239, 2e-3);
  EXPECT_NEAR(detect_critical_dz(at(0.5, 1, 0, 1.5), t).value, 0.611, 2e-3);
  double prev = INFINITY;
  for (double R : {0.1, 0.2, 0.3}) {
    const double v = detect_critical_dz(at(R, 1, 0, 0.5), t).value;
    EXPECT_LT(v, prev);
    prev = v;
  }
  prev = -INFINITY;
  for (double B : {1.0, 1.2, 1.5}) {
    const double v = detect_critical_dz(at(0.5, 1, 0, B), t).value;
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Presets, AllNamedPresetsRun) {
  for (const std::string& name : preset_names()) {
    const FigureSet set = figure_preset(name, 4);
    EXPECT_FALSE(set.curves.empty()) << name;
    for (const SweepResult& c : set.curves) EXPECT_GE(c.rows.size(), 2u);
    const std::string svg = render_svg(set);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
  }
  EXPECT_THROW(figure_preset("fig9"), InvalidArgument);
}

TEST(Presets, Fig1PeakOnGrid) {
  const FigureSet set = figure_preset("fig1");
  const auto& rows = set.curves.at(0).rows;
  const auto best = std::max_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.J < b.J; });
  EXPECT_EQ(best->params.R, 1.25);
}

TEST(Presets, DeterministicCsv) {
  const FigureSet a = figure_preset("fig3b", 1);
  const FigureSet b = figure_preset("fig3b", 7);
  std::ostringstream sa, sb;
  write_csv(sa, a.curves);
  write_csv(sb, b.curves);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Svg, EmptyAndUnknownColumn) {
  FigureSet empty{"x", "empty", "negativity", {}, {}};
  EXPECT_NE(render_svg(empty).find("</svg>"), std::string::npos);
  FigureSet one = figure_preset("fig4c");
  EXPECT_THROW(render_svg(one, "nope"), InvalidArgument);
}

TEST(Validate, DefaultRunPasses) {
  const ValidationReport r = validate();
  for (const CheckResult& c : r.checks) EXPECT_TRUE(c.passed) << c.name << " worst " << c.worst;
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.checks.size(), 20u);
}

TEST(Validate, CatchesPrintedEpsilon9Sign) {
  ValidationConfig cfg;
  cfg.spectrum_draws = 50;
  cfg.gibbs_draws = 10;
  cfg.property_draws = 5;
  cfg.spectrum = [](const ModelParams& p) { return analytic_spectrum(p, Epsilon9Sign::AsPrinted); };
  const ValidationReport r = validate(cfg);
  EXPECT_FALSE(r.passed());
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [](const CheckResult& c) { return c.name == "spectrum_vs_numeric"; });
  ASSERT_NE(it, r.checks.end());
  EXPECT_FALSE(it->passed);
}

TEST(Validate, CatchesTamperedDensityMatrix) {
  ValidationConfig cfg;
  cfg.spectrum_draws = 10;
  cfg.gibbs_draws = 20;
  cfg.property_draws = 5;
  cfg.gibbs_closed_form = [](const ModelParams& p, double T) {
    ThermalState s = gibbs_analytic(p, T);
    s.rho(2, 4) *= 1.001;
    s.rho(4, 2) *= 1.001;
    return s;
  };
  const ValidationReport r = validate(cfg);
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [](const CheckResult& c) { return c.name == "gibbs_dual_route"; });
  ASSERT_NE(it, r.checks.end());
  EXPECT_FALSE(it->passed);
  EXPECT_FALSE(r.passed());
}
