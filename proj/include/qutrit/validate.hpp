#ifndef QUTRIT_VALIDATE_HPP
#define QUTRIT_VALIDATE_HPP

// Self-validation: closed forms against the numeric route, density-matrix
// invariants, symmetry properties of the negativity and the T = 0 critical
// fields. Each check records its worst residual against a fixed tolerance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qutrit/critical.hpp"
#include "qutrit/entanglement.hpp"
#include "qutrit/format.hpp"
#include "qutrit/matkernel.hpp"
#include "qutrit/model.hpp"
#include "qutrit/thermal.hpp"

namespace qutrit {

/// Negativity quoted for the B = 0, Dz = 1, R = 0.5 ground state in the source
/// study; the tool reproduces it to within 1e-2 and reports the residual.
inline constexpr double kQuotedGroundNegativity = 0.9616;
inline constexpr double kQuotedGroundNegativityTolerance = 1e-2;

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

struct ValidationConfig {
  std::function<AnalyticSpectrum(const ModelParams&)> spectrum = [](const ModelParams& p) {
    return analytic_spectrum(p);
  };
  std::function<ThermalState(const ModelParams&, double)> gibbs_closed_form = gibbs_analytic;
  int spectrum_draws = 1000;
  int gibbs_draws = 200;
  int property_draws = 50;
  std::uint64_t seed = 20240611;
};

/// Random model parameters over R in (0.05, 6], gamma in [-2, 2], Dz and B in [-3, 3].
class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

  ModelParams params() {
    ModelParams p;
    p.R = 6.0 - uniform(0.0, 5.95);
    p.gamma = uniform(-2.0, 2.0);
    p.Dz = uniform(-3.0, 3.0);
    p.B = uniform(-3.0, 3.0);
    return p;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// exp(i K) for a random Hermitian K, i.e. a random unitary of size n.
  Matrix unitary(std::size_t n) {
    std::normal_distribution<double> g;
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      k(i, i) = g(rng_);
      for (std::size_t j = i + 1; j < n; ++j) {
        k(i, j) = Complex(g(rng_), g(rng_));
        k(j, i) = std::conj(k(i, j));
      }
    }
    const EigenDecomposition e = hermitian_eig(k);
    Matrix phases(n, n);
    for (std::size_t i = 0; i < n; ++i) phases(i, i) = std::polar(1.0, e.eigenvalues[i]);
    return e.eigenvectors * phases * adjoint(e.eigenvectors);
  }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

class CheckBuilder {
 public:
  CheckBuilder(std::string name, double tolerance) : result_{std::move(name), true, 0.0, tolerance, {}} {}

  void observe(double residual) {
    if (!(residual <= result_.worst)) result_.worst = std::isnan(residual) ? INFINITY : residual;
  }

  CheckResult finish(std::string detail = {}) {
    result_.passed = result_.worst <= result_.tolerance;
    result_.detail = std::move(detail);
    return result_;
  }

 private:
  CheckResult result_;
};

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline double max_sorted_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace detail

inline ValidationReport validate(const ValidationConfig& cfg = {}) {
  ValidationReport report;

  // Closed-form spectrum against Jacobi, plus the algebraic identities.
  {
    ParamSampler rng(cfg.seed);
    detail::CheckBuilder eig("spectrum_vs_numeric", 1e-10);
    detail::CheckBuilder vec("eigenvector_residuals", 1e-12);
    detail::CheckBuilder chi("chi_product", 1e-12);
    detail::CheckBuilder sum("eigenvalue_sum", 1e-12);
    for (int d = 0; d < cfg.spectrum_draws; ++d) {
      const ModelParams p = rng.params();
      const Matrix h = hamiltonian_tensor(p);
      const AnalyticSpectrum s = cfg.spectrum(p);
      const std::vector<double> analytic(s.eps.begin(), s.eps.end());
      eig.observe(detail::max_sorted_gap(detail::sorted(analytic), hermitian_eigenvalues(h)));
      for (std::size_t i = 0; i < kDim; ++i) {
        std::vector<Complex> hv = apply_to(h, s.vecs[i]);
        for (std::size_t k = 0; k < kDim; ++k) hv[k] -= s.eps[i] * s.vecs[i][k];
        vec.observe(vector_norm(hv));
        vec.observe(std::abs(vector_norm(s.vecs[i]) - 1.0));
      }
      chi.observe(std::abs(s.chi1 * s.chi2 - 8.0));
      double total = 0.0;
      for (double e : s.eps) total += e;
      sum.observe(std::abs(total));
    }
    const std::string draws = std::to_string(cfg.spectrum_draws) + " random draws";
    report.checks.push_back(eig.finish(draws));
    report.checks.push_back(vec.finish(draws));
    report.checks.push_back(chi.finish(draws));
    report.checks.push_back(sum.finish(draws));
  }

  // Closed-form Gibbs state against V diag(w) V^dagger, and Z from both spectra.
  {
    ParamSampler rng(cfg.seed + 1);
    detail::CheckBuilder rho("gibbs_dual_route", 1e-10);
    detail::CheckBuilder z("partition_dual_route", 1e-10);
    detail::CheckBuilder tr("rho_trace", 1e-12);
    detail::CheckBuilder herm("rho_hermitian", 1e-12);
    detail::CheckBuilder psd("rho_psd", 1e-12);
    detail::CheckBuilder comm("rho_commutes_with_h", 1e-10);
    for (int d = 0; d < cfg.gibbs_draws; ++d) {
      const ModelParams p = rng.params();
      const double T = rng.uniform(0.05, 5.0);
      const ThermalState numeric = gibbs_numeric(p, T);
      const ThermalState closed = cfg.gibbs_closed_form(p, T);
      rho.observe(max_abs_diff(numeric.rho, closed.rho));

      const AnalyticSpectrum s = analytic_spectrum(p);
      const double za = log_partition_function(std::vector<double>(s.eps.begin(), s.eps.end()), T);
      // |log Za - log Zn| bounds the relative difference of Z.
      z.observe(std::abs(std::expm1(za - *numeric.log_z)));

      const Matrix h = hamiltonian_tensor(p);
      for (const ThermalState* st : {&numeric, &closed}) {
        tr.observe(std::abs(trace(st->rho) - 1.0));
        herm.observe(max_abs_diff(st->rho, adjoint(st->rho)));
        psd.observe(std::max(0.0, -hermitian_eigenvalues(st->rho).front()));
        comm.observe(max_abs(commutator(h, st->rho)));
      }
    }
    const std::string draws = std::to_string(cfg.gibbs_draws) + " random draws, T in [0.05, 5]";
    report.checks.push_back(rho.finish(draws));
    report.checks.push_back(z.finish(draws));
    report.checks.push_back(tr.finish(draws));
    report.checks.push_back(herm.finish(draws));
    report.checks.push_back(psd.finish(draws));
    report.checks.push_back(comm.finish(draws));
  }

  // Negativity properties.
  {
    ParamSampler rng(cfg.seed + 2);
    detail::CheckBuilder inv("partial_transpose_involution", 0.0);
    detail::CheckBuilder sides("subsystem_symmetry", 1e-10);
    detail::CheckBuilder dz("dz_parity", 1e-10);
    detail::CheckBuilder bp("b_parity", 1e-10);
    detail::CheckBuilder lu("local_unitary_invariance", 1e-9);
    for (int d = 0; d < cfg.property_draws; ++d) {
      const ModelParams p = rng.params();
      const double T = rng.uniform(0.05, 2.0);
      const Matrix rho = thermal_state(p, T).rho;
      inv.observe(max_abs_diff(partial_transpose(partial_transpose(rho)), rho));
      inv.observe(max_abs_diff(partial_transpose(partial_transpose(rho, Subsystem::Second), Subsystem::Second), rho));
      sides.observe(subsystem_asymmetry(rho));
      const double n = negativity(rho).value;

      ModelParams q = p;
      q.Dz = -p.Dz;
      dz.observe(std::abs(n - negativity(thermal_state(q, T).rho).value));
      q = p;
      q.B = -p.B;
      bp.observe(std::abs(n - negativity(thermal_state(q, T).rho).value));

      if (d < 20) {
        const Matrix u = kron(rng.unitary(3), rng.unitary(3));
        lu.observe(std::abs(n - negativity(apply_conjugation(u, rho)).value));
      }
    }
    report.checks.push_back(inv.finish("exact equality"));
    report.checks.push_back(sides.finish());
    report.checks.push_back(dz.finish());
    report.checks.push_back(bp.finish());
    report.checks.push_back(lu.finish("20 random local unitaries"));
  }

  // Pure-state oracle against the full pipeline on all nine closed-form eigenvectors.
  {
    ParamSampler rng(cfg.seed + 3);
    detail::CheckBuilder oracle("pure_state_oracle_equivalence", 1e-10);
    detail::CheckBuilder product("product_state_separability", 0.0);
    for (int d = 0; d < 20; ++d) {
      const AnalyticSpectrum s = analytic_spectrum(rng.params());
      for (const auto& v : s.vecs)
        oracle.observe(std::abs(pure_state_negativity_oracle(v) - negativity(projector(v)).value));
    }
    for (std::size_t i = 0; i < kDim; ++i) {
      std::vector<Complex> e(kDim);
      e[i] = 1.0;
      product.observe(negativity(projector(e)).value);
    }
    report.checks.push_back(oracle.finish("nine eigenvectors x 20 draws"));
    report.checks.push_back(product.finish("all nine product basis states"));
  }

  // Ground-state negativity at B = 0, Dz = 1, R = 0.5: two routes, and distance to the quoted value.
  {
    ModelParams p;
    p.R = 0.5;
    p.Dz = 1.0;
    p.B = 0.0;
    const double pipeline = ground_negativity(p);
    const AnalyticSpectrum s = analytic_spectrum(p);
    const double oracle = pure_state_negativity_oracle(s.vecs[8]);
    detail::CheckBuilder routes("ground_negativity_routes", 1e-9);
    routes.observe(std::abs(pipeline - oracle));
    report.checks.push_back(routes.finish("N = " + format_number(pipeline)));

    detail::CheckBuilder quoted("ground_negativity_vs_quoted", kQuotedGroundNegativityTolerance);
    quoted.observe(std::abs(pipeline - kQuotedGroundNegativity));
    report.checks.push_back(quoted.finish("tool " + format_number(pipeline) + " vs quoted " +
                                          format_number(kQuotedGroundNegativity) + ", residual " +
                                          format_number(pipeline - kQuotedGroundNegativity) +
                                          "; a^2+2ab on phi9 gives the tool value, not the 0.967269 "
                                          "target stated alongside it"));
  }

  // T = 0 field crossings at R = Dz = gamma = 1 against their closed forms.
  {
    ModelParams p;
    p.R = 1.0;
    p.Dz = 1.0;
    const double J = p.coupling();
    const double r = std::hypot(p.Dz, J);
    const double first = 0.5 * (J + std::sqrt(J * J + 8.0 * r * r)) - r;
    const double second = J + r;
    const std::vector<CriticalPoint> found = detect_critical_field(p);
    detail::CheckBuilder crit("critical_field_crossings", 1e-6);
    if (found.size() != 2) {
      crit.observe(INFINITY);
    } else {
      crit.observe(std::abs(found[0].value - first));
      crit.observe(std::abs(found[1].value - second));
    }
    std::string detail = std::to_string(found.size()) + " crossings:";
    for (const CriticalPoint& c : found) detail += " " + format_number(c.value);
    report.checks.push_back(crit.finish(detail));
  }

  // Herring-Flicker maximum at R = 5/4.
  {
    detail::CheckBuilder peak("hf_coupling_maximum", 1e-12);
    const double top = hf_coupling(1.25);
    for (double dr : {1e-3, 1e-2, 0.1}) {
      peak.observe(std::max(0.0, hf_coupling(1.25 + dr) - top));
      peak.observe(std::max(0.0, hf_coupling(1.25 - dr) - top));
    }
    report.checks.push_back(peak.finish("J(1.25) = " + format_number(top)));
  }

  return report;
}

}  // namespace qutrit

#endif  // QUTRIT_VALIDATE_HPP
