// qutrit: command-line front end for the two-qutrit XXZ/DM negativity library.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid arguments, 3 numerical
// failure (including "no onset found"), 4 validation failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qutrit/qutrit.hpp"

namespace {

using nlohmann::json;
using namespace qutrit;

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

struct Options {
  std::optional<double> R, B, Dz, gamma, T, J;
  std::optional<std::string> out, svg, config, format;
  // sweep
  std::optional<std::string> vary;
  std::optional<double> from, to;
  std::optional<int> steps;
  unsigned threads = 1;
  // figure / critical
  std::string preset;
  std::string critical_kind = "field";
  double b_max = kDefaultFieldMax;
  double dz_max = kDefaultDzMax;
};

void add_model_options(CLI::App* app, Options& o) {
  auto* r = app->add_option("--R", o.R, "Herring-Flicker distance R");
  auto* j = app->add_option("--J", o.J, "direct exchange J (replaces J(R))");
  r->excludes(j);
  app->add_option("--B", o.B, "uniform magnetic field");
  app->add_option("--Dz", o.Dz, "z-axis DM strength");
  app->add_option("--gamma", o.gamma, "XXZ anisotropy (default 1)");
  app->add_option("--T", o.T, "temperature (k_B = 1)");
  app->add_option("--out", o.out, "output file (default: stdout)");
  app->add_option("--svg", o.svg, "also write an SVG chart here");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--config", o.config, "JSON file with the same keys; flags override it");
  app->add_option("--threads", o.threads, "worker threads for sweeps")->check(CLI::Range(1u, 256u));
}

template <typename T>
void fill_from(const json& cfg, const char* key, std::optional<T>& slot) {
  if (slot || !cfg.contains(key)) return;
  try {
    slot = cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("config key '") + key + "' has the wrong type");
  }
}

// Flags win over the config file; --R and --J on the command line each
// suppress the other coming from the config.
void merge_config(Options& o) {
  if (!o.config) return;
  std::ifstream in(*o.config);
  if (!in) throw IoError("cannot read config '" + *o.config + "'");
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw InvalidArgument("config '" + *o.config + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw InvalidArgument("config '" + *o.config + "' must be a JSON object");
  const bool flag_r = o.R.has_value();
  const bool flag_j = o.J.has_value();
  if (!flag_j) fill_from(cfg, "R", o.R);
  if (!flag_r) fill_from(cfg, "J", o.J);
  if (o.R && o.J) throw InvalidArgument("R and J are mutually exclusive");
  fill_from(cfg, "B", o.B);
  fill_from(cfg, "Dz", o.Dz);
  fill_from(cfg, "gamma", o.gamma);
  fill_from(cfg, "T", o.T);
  fill_from(cfg, "out", o.out);
  fill_from(cfg, "svg", o.svg);
  fill_from(cfg, "format", o.format);
  fill_from(cfg, "vary", o.vary);
  fill_from(cfg, "from", o.from);
  fill_from(cfg, "to", o.to);
  fill_from(cfg, "steps", o.steps);
  if (o.format && *o.format != "csv" && *o.format != "json") throw InvalidArgument("format must be csv or json");
}

ModelParams model_from(const Options& o) {
  ModelParams p;
  if (o.R) p.R = *o.R;
  if (o.J) p.j_override = *o.J;
  if (o.B) p.B = *o.B;
  if (o.Dz) p.Dz = *o.Dz;
  if (o.gamma) p.gamma = *o.gamma;
  if (!p.j_override && !(p.R > 0.0)) throw DomainError("R must be positive (or pass --J)");
  if (p.outside_physical_range()) {
    std::cerr << "warning: R = " << format_number(p.R) << " lies outside (0, 6) where J(R) is non-negligible\n";
  }
  return p;
}

double require_T(const Options& o, const char* what) {
  if (!o.T) throw InvalidArgument(std::string(what) + " needs --T");
  if (!(*o.T >= 0.0)) throw DomainError("temperature must be non-negative");
  return *o.T;
}

std::string format_of(const Options& o, const char* fallback = "csv") { return o.format.value_or(fallback); }

json params_json(const ModelParams& p) {
  json j = {{"B", p.B}, {"Dz", p.Dz}, {"gamma", p.gamma}, {"J", p.coupling()}};
  if (p.j_override) j["J_override"] = *p.j_override;
  else j["R"] = p.R;
  return j;
}

json number_or_null(std::optional<double> x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

json row_json(const SweepRow& row) {
  json j = {{"grid_param", row.grid_param},
            {"T", row.T},
            {"B", row.params.B},
            {"Dz", row.params.Dz},
            {"gamma", row.params.gamma},
            {"J", row.J},
            {"r", row.r},
            {"theta", row.theta},
            {"Z", number_or_null(row.Z)},
            {"ground_energy", row.ground_energy},
            {"negativity", row.negativity}};
  if (row.grid_param != "point") j["grid_value"] = row.grid_value;
  j["R"] = row.params.j_override ? json(nullptr) : json(row.params.R);
  return j;
}

json meta_json(const Meta& meta) {
  json j = json::object();
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

json figure_json(const FigureSet& set) {
  json curves = json::array();
  for (const SweepResult& c : set.curves) {
    json rows = json::array();
    for (const SweepRow& r : c.rows) rows.push_back(row_json(r));
    curves.push_back({{"label", c.label}, {"meta", meta_json(c.meta)}, {"rows", rows}});
  }
  return {{"name", set.name}, {"title", set.title}, {"meta", meta_json(set.meta)}, {"curves", curves}};
}

// Writes to --out or stdout.
void deliver(const Options& o, const std::string& text) {
  if (!o.out) {
    std::cout << text;
    return;
  }
  std::ofstream f(*o.out, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + *o.out + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("failed writing '" + *o.out + "'");
}

json figure_json_meta(const FigureSet& set) {
  json curves = json::array();
  for (const SweepResult& c : set.curves) curves.push_back({{"label", c.label}, {"meta", meta_json(c.meta)}});
  return {{"name", set.name}, {"title", set.title}, {"meta", meta_json(set.meta)}, {"curves", curves}};
}

// CSV keeps its fixed header, so the parameter echo goes next to it.
void write_meta_sidecar(const Options& o, const FigureSet& set) {
  if (!o.out || format_of(o) != "csv") return;
  const std::string path = *o.out + ".meta.json";
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << figure_json_meta(set).dump(2) << '\n';
}

std::string csv_text(std::span<const SweepResult> results) {
  std::ostringstream os;
  write_csv(os, results);
  return os.str();
}

void emit_figure(const Options& o, const FigureSet& set) {
  if (format_of(o) == "json") {
    deliver(o, figure_json(set).dump(2) + "\n");
  } else {
    deliver(o, csv_text(set.curves));
    write_meta_sidecar(o, set);
  }
  if (o.svg) emit_svg(set, *o.svg);
}

int run_spectrum(const Options& o) {
  const ModelParams p = model_from(o);
  const std::vector<double> numeric = hermitian_eigenvalues(hamiltonian_tensor(p));
  std::optional<AnalyticSpectrum> analytic;
  if (!effective_coupling(p).degenerate) analytic = analytic_spectrum(p);

  if (format_of(o) == "json") {
    json j = {{"params", params_json(p)}, {"numeric", numeric}};
    const EffectiveCoupling ec = effective_coupling(p);
    j["r"] = ec.r;
    j["theta"] = ec.theta;
    if (analytic) {
      j["analytic"] = {{"eps", analytic->eps}, {"chi1", analytic->chi1}, {"chi2", analytic->chi2}};
    } else {
      j["analytic"] = nullptr;
    }
    deliver(o, j.dump(2) + "\n");
    return 0;
  }
  std::string text = "kind,label,value\n";
  if (analytic) {
    for (std::size_t i = 0; i < kDim; ++i)
      text += "analytic,eps" + std::to_string(i + 1) + "," + format_number(analytic->eps[i]) + "\n";
    text += "analytic,chi1," + format_number(analytic->chi1) + "\n";
    text += "analytic,chi2," + format_number(analytic->chi2) + "\n";
  }
  for (std::size_t i = 0; i < numeric.size(); ++i)
    text += "numeric," + std::to_string(i) + "," + format_number(numeric[i]) + "\n";
  deliver(o, text);
  return 0;
}

int run_negativity(const Options& o) {
  const ModelParams p = model_from(o);
  const double T = require_T(o, "negativity");
  const SweepRow row = evaluate_point(p, T);
  if (format_of(o) == "json") {
    deliver(o, row_json(row).dump(2) + "\n");
  } else {
    deliver(o, std::string(kCsvHeader) + "\n" + csv_row(row) + "\n");
  }
  return 0;
}

int run_sweep_cmd(const Options& o) {
  if (!o.vary || !o.from || !o.to || !o.steps) throw InvalidArgument("sweep needs --vary, --from, --to and --steps");
  SweepSpec spec;
  spec.vary = parse_axis(*o.vary);
  spec.start = *o.from;
  spec.stop = *o.to;
  spec.steps = *o.steps;
  spec.fixed = model_from(o);
  if (spec.vary != SweepAxis::T) spec.T = require_T(o, "a B, Dz or R sweep");
  SweepResult result = run_sweep(spec, o.threads);
  FigureSet set{"sweep", std::string(axis_name(spec.vary)) + " sweep", "negativity", {}, result.meta};
  set.curves.push_back(std::move(result));
  emit_figure(o, set);
  return 0;
}

int run_figure(const Options& o) {
  emit_figure(o, figure_preset(o.preset, o.threads));
  return 0;
}

int run_critical(const Options& o) {
  const ModelParams p = model_from(o);
  std::vector<CriticalPoint> points;
  if (o.critical_kind == "field") {
    points = detect_critical_field(p, o.b_max);
  } else {
    points.push_back(detect_critical_dz(p, require_T(o, "critical --kind dz"), o.dz_max));
  }
  if (format_of(o) == "json") {
    json arr = json::array();
    for (const CriticalPoint& c : points)
      arr.push_back({{"parameter", axis_name(c.parameter)}, {"kind", kind_name(c.kind)}, {"value", c.value},
                     {"lo", c.lo}, {"hi", c.hi}});
    deliver(o, json({{"params", params_json(p)}, {"critical_points", arr}}).dump(2) + "\n");
    return 0;
  }
  std::string text = "parameter,kind,value,lo,hi\n";
  for (const CriticalPoint& c : points) {
    text += std::string(axis_name(c.parameter)) + "," + std::string(kind_name(c.kind)) + "," +
            format_number(c.value) + "," + format_number(c.lo) + "," + format_number(c.hi) + "\n";
  }
  deliver(o, text);
  return 0;
}

int run_validate(const Options& o) {
  const ValidationReport report = validate();
  if (format_of(o, "json") == "json") {
    json checks = json::array();
    for (const CheckResult& c : report.checks)
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"tolerance", c.tolerance},
                        {"detail", c.detail}});
    deliver(o, json({{"passed", report.passed()}, {"checks", checks}}).dump(2) + "\n");
  } else {
    std::string text = "name,passed,worst,tolerance,detail\n";
    for (const CheckResult& c : report.checks)
      text += c.name + "," + (c.passed ? "true" : "false") + "," + format_number(c.worst) + "," +
              format_number(c.tolerance) + ",\"" + c.detail + "\"\n";
    deliver(o, text);
  }
  return report.passed() ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal negativity of a two-qutrit XXZ chain with z-axis DM interaction"};
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "closed-form and numeric eigenvalues");
  auto* neg = app.add_subcommand("negativity", "negativity at a single (parameters, T) point");
  auto* sweep = app.add_subcommand("sweep", "negativity along one parameter axis");
  auto* figure = app.add_subcommand("figure", "run a named figure preset");
  auto* critical = app.add_subcommand("critical", "critical field (T = 0) or critical Dz onset");
  auto* val = app.add_subcommand("validate", "run the cross-validation suite");

  for (CLI::App* sub : {spectrum, neg, sweep, figure, critical, val}) add_model_options(sub, o);
  sweep->add_option("--vary", o.vary, "T, B, Dz or R")->check(CLI::IsMember({"T", "B", "Dz", "R"}));
  sweep->add_option("--from", o.from, "first grid value");
  sweep->add_option("--to", o.to, "last grid value");
  sweep->add_option("--steps", o.steps, "number of grid points (>= 2)");
  figure->add_option("name", o.preset, "preset name")->required()->check(CLI::IsMember(preset_names()));
  critical->add_option("--kind", o.critical_kind, "field or dz")->check(CLI::IsMember({"field", "dz"}));
  critical->add_option("--Bmax", o.b_max, "upper end of the B scan");
  critical->add_option("--Dzmax", o.dz_max, "upper end of the Dz scan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    merge_config(o);
    if (spectrum->parsed()) return run_spectrum(o);
    if (neg->parsed()) return run_negativity(o);
    if (sweep->parsed()) return run_sweep_cmd(o);
    if (figure->parsed()) return run_figure(o);
    if (critical->parsed()) return run_critical(o);
    if (val->parsed()) return run_validate(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NoOnset& e) {
    std::cerr << "no onset: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInvalid;
}
