#include "nqt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "nqt/errors.hpp"
#include "nqt/parallel.hpp"
#include "nqt/teleport.hpp"

namespace nqt {

namespace {

const std::vector<double> kChannelGrid = {0.05, 0.1, 0.5, 1.0, 2.0};
const std::vector<double> kTableGrid = {0.0, 0.1, 0.5, 1.0};

std::vector<ChannelKind> three_qubit_channels() {
  return {channel::GhzStd{}, channel::WStd{}};
}

CheckResult at_most(std::string name, double residual, double threshold,
                    std::string detail = {}) {
  return {std::move(name), residual < threshold, residual, threshold,
          std::move(detail)};
}

// Runs `body` and turns a thrown error into a failed check.
CheckResult guarded(const std::string& name,
                    const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::nan(""), 0.0, e.what()};
  }
}

CheckResult check_channel_oracles() {
  double worst = 0.0;
  std::string where;
  for (const auto& ch : three_qubit_channels()) {
    for (NoiseKind noise : kAllNoiseKinds) {
      const NoiseSpec spec = NoiseSpec::from_kind(noise, 1.0, 3);
      for (double kt : kChannelGrid) {
        const double d = max_abs_diff(noisy_channel(ch, spec, kt).matrix(),
                                      closed_channel(ch, noise, kt).matrix());
        if (d > worst) {
          worst = d;
          where = fmt::format("{} {} kt={}", channel_name(ch), noise_name(noise), kt);
        }
      }
    }
  }
  return at_most("channel_solutions_expm_vs_closed", worst, 1e-10, where);
}

CheckResult check_rk4(std::optional<int> steps) {
  double worst = 0.0;
  for (const auto& ch : three_qubit_channels()) {
    const DensityMatrix pure = DensityMatrix::from_pure(make_channel(ch));
    for (NoiseKind noise : kAllNoiseKinds) {
      const NoiseSpec spec = NoiseSpec::from_kind(noise, 1.0, 3);
      for (double kt : kChannelGrid) {
        const double d = max_abs_diff(evolve_rk4(pure, spec, kt, steps).matrix(),
                                      evolve_expm(pure, spec, kt).matrix());
        worst = std::max(worst, d);
      }
    }
  }
  return at_most("rk4_vs_expm", worst, 1e-9,
                 steps ? fmt::format("steps={}", *steps) : "default steps");
}

CheckResult check_certificates(const std::vector<CircuitUnitary>& circuits) {
  double worst = 0.0;
  std::string detail;
  for (const auto& u : circuits) {
    const double d = std::max(
        unitarity_defect(u.matrix()),
        noiseless_defect(u.matrix(),
                         DensityMatrix::from_pure(make_channel(u.channel()))));
    worst = std::max(worst, d);
    detail += channel_name(u.channel()) + ": " + describe(u.gates()) + "; ";
  }
  return at_most("perfect_teleportation_certificates", worst, 1e-10, detail);
}

CheckResult check_table1(const std::vector<CircuitUnitary>& circuits,
                         bool pointwise) {
  double worst = 0.0;
  for (const auto& u : circuits) {
    if (std::holds_alternative<channel::Epr>(u.channel())) continue;
    for (NoiseKind noise : kAllNoiseKinds) {
      for (double kt : kTableGrid) {
        const FidelityReport r = fidelity_report(u, noise, kt, 5, 5);
        worst = std::max(worst, pointwise
                                    ? r.max_abs_delta
                                    : std::abs(r.f_bar_numeric - r.f_bar_oracle));
      }
    }
  }
  return at_most(pointwise ? "table1_pointwise" : "table1_average", worst, 1e-9);
}

std::vector<CheckResult> check_appendix() {
  const AppendixDiagnostics d = appendix_check({0.0, 0.25, 0.5, 1.0});
  return {
      at_most("appendix_x_coherences", d.x_residual, 1e-12),
      at_most("appendix_y_coherences", d.y_residual, 1e-12),
      at_most("appendix_conjugated_solves_y_noise", d.conjugated_residual, 1e-10),
      {"appendix_conjugated_boundary_violation", d.boundary_distance > 0.1,
       d.boundary_distance, 0.1, "distance from rho_GHZ at kt=0 must exceed"},
  };
}

std::vector<CheckResult> check_groverian(std::uint64_t seed) {
  GroverianOptions opts;
  opts.seed = seed;
  const double target = 1.0 / std::sqrt(2.0);
  double worst = std::max(
      std::abs(groverian_pure(make_channel(channel::GhzStd{}), opts) - target),
      std::abs(groverian_pure(make_channel(channel::WStd{}), opts) - target));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto random_qubit = [&] {
    ComplexVector q(2);
    for (int i = 0; i < 2; ++i) q[i] = Complex(gauss(rng), gauss(rng));
    return ComplexVector(q.normalized());
  };
  for (int i = 0; i < 5; ++i) {
    const StateVector psi =
        make_channel(channel::PsiTilde{random_qubit(), random_qubit()});
    worst = std::max(worst, std::abs(groverian_pure(psi, opts) - target));
  }

  ComplexVector product = ComplexVector::Zero(8);
  product[2] = 1.0;  // |010>
  const double g_product = groverian_pure(StateVector(product), opts);
  return {at_most("groverian_maximally_entangled", worst, 1e-6),
          at_most("groverian_product_state", g_product, 1e-8)};
}

std::vector<CheckResult> check_crossover() {
  const ChannelKind ghz = channel::GhzStd{}, w = channel::WStd{};
  std::vector<CheckResult> out;
  out.push_back(guarded("crossover_z", [&] {
    const double kt = crossover(closed_form(ghz, NoiseKind::AxisZ),
                                closed_form(w, NoiseKind::AxisZ), {0.05, 0.5});
    return at_most("crossover_z", std::abs(kt - 0.223), 5e-3,
                   fmt::format("kt*={:.10f}", kt));
  }));
  for (NoiseKind noise : {NoiseKind::AxisX, NoiseKind::AxisY}) {
    const ClosedForm g = closed_form(ghz, noise), wf = closed_form(w, noise);
    // GHZ dominates under x noise, W under y noise.
    const double sign = noise == NoiseKind::AxisX ? 1.0 : -1.0;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 500; ++i) {
      const double kt = 5.0 * i / 500;
      worst = std::min(worst, sign * (g.averaged(kt) - wf.averaged(kt)));
    }
    out.push_back({"no_crossover_" + noise_name(noise), worst > 0.0, worst, 0.0,
                   "min signed gap on (0, 5] must exceed"});
  }
  return out;
}

CheckResult check_asymptotes() {
  struct Case {
    ChannelKind ch;
    NoiseKind noise;
    double limit;
  };
  const std::vector<Case> cases = {
      {channel::GhzStd{}, NoiseKind::AxisX, 2.0 / 3},
      {channel::GhzStd{}, NoiseKind::AxisZ, 2.0 / 3},
      {channel::GhzStd{}, NoiseKind::AxisY, 0.5},
      {channel::GhzStd{}, NoiseKind::Isotropic, 0.5},
      {channel::WStd{}, NoiseKind::Isotropic, 0.5},
      {channel::WStd{}, NoiseKind::AxisX, 7.0 / 12},
      {channel::WStd{}, NoiseKind::AxisY, 7.0 / 12},
      {channel::WStd{}, NoiseKind::AxisZ, 7.0 / 12},
  };
  double worst_exact = 0.0, worst_at5 = 0.0;
  for (const auto& c : cases) {
    worst_exact = std::max(worst_exact, std::abs(asymptote(c.ch, c.noise) - c.limit));
    worst_at5 = std::max(
        worst_at5, std::abs(closed_form(c.ch, c.noise).averaged(5.0) - c.limit));
  }
  CheckResult r = at_most("asymptotes", worst_exact, 1e-12,
                          fmt::format("max |F(5) - limit| = {:.3e}", worst_at5));
  r.passed = r.passed && worst_at5 < 2e-2;
  return r;
}

CheckResult check_isotropic_equality(const CircuitUnitary& ghz,
                                     const CircuitUnitary& w) {
  const ClosedForm g = closed_form(ghz.channel(), NoiseKind::Isotropic);
  const ClosedForm wf = closed_form(w.channel(), NoiseKind::Isotropic);
  double closed_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double kt = 3.0 * i / 99;
    closed_gap = std::max(closed_gap, std::abs(g.averaged(kt) - wf.averaged(kt)));
  }
  double numeric_gap = 0.0;
  for (double kt : kTableGrid) {
    const NoiseSpec spec = NoiseSpec::from_kind(NoiseKind::Isotropic, 1.0, 3);
    numeric_gap = std::max(
        numeric_gap,
        std::abs(avg_fidelity_numeric(ghz, noisy_channel(ghz.channel(), spec, kt)) -
                 avg_fidelity_numeric(w, noisy_channel(w.channel(), spec, kt))));
  }
  CheckResult r = at_most("isotropic_equality", closed_gap, 1e-12,
                          fmt::format("numeric gap {:.3e}", numeric_gap));
  r.passed = r.passed && numeric_gap < 1e-9;
  return r;
}

CheckResult check_epr(const CircuitUnitary& epr) {
  double worst = 0.0;
  bool ordered = true;
  for (int i = 0; i <= 20; ++i) {
    const double kt = 0.1 * i;
    const double same = avg_fidelity_numeric(
        epr, noisy_channel(epr.channel(), NoiseSpec::from_axes({Axis::X, Axis::X}, 1), kt));
    const double mixed = avg_fidelity_numeric(
        epr, noisy_channel(epr.channel(), NoiseSpec::from_axes({Axis::X, Axis::Z}, 1), kt));
    const double iso = avg_fidelity_numeric(
        epr, noisy_channel(epr.channel(),
                           NoiseSpec::from_kind(NoiseKind::Isotropic, 1, 2), kt));
    const double e = std::exp(-kt);
    const double f1 = 2.0 / 3 + std::pow(e, 4) / 3;
    const double fd = (3 + 2 * std::pow(e, 2) + std::pow(e, 4)) / 6;
    const double f2 = 0.5 + 0.5 * std::pow(e, 8);
    worst = std::max({worst, std::abs(same - f1), std::abs(mixed - fd),
                      std::abs(iso - f2)});
    if (kt > 0 && !(mixed < same)) ordered = false;
  }
  CheckResult r = at_most("epr_same_mixed_isotropic", worst, 1e-9,
                          ordered ? "mixed < same for kt > 0" : "ordering violated");
  r.passed = r.passed && ordered;
  return r;
}

std::vector<CheckResult> check_properties() {
  std::vector<CheckResult> out;
  double trace = 0.0, herm = 0.0, min_eig = 0.0, semigroup = 0.0, fixed = 0.0;
  for (const auto& ch : three_qubit_channels()) {
    const DensityMatrix pure = DensityMatrix::from_pure(make_channel(ch));
    for (NoiseKind noise : kAllNoiseKinds) {
      const NoiseSpec spec = NoiseSpec::from_kind(noise, 1.0, 3);
      for (double t : {0.0, 0.3, 1.0, 2.5, 5.0}) {
        const ComplexMatrix m = evolve_expm(pure, spec, t).matrix();
        const DensityDiagnostics d = validate(m);
        trace = std::max(trace, d.trace_defect);
        herm = std::max(herm, d.hermiticity_defect);
        min_eig = std::min(min_eig, d.min_eigenvalue);
      }
      const DensityMatrix a = evolve_expm(evolve_expm(pure, spec, 0.4), spec, 0.7);
      const DensityMatrix b = evolve_expm(pure, spec, 1.1);
      semigroup = std::max(semigroup, max_abs_diff(a.matrix(), b.matrix()));
      const ComplexMatrix mixed = DensityMatrix::maximally_mixed(3).matrix();
      fixed = std::max(fixed, dissipator(mixed, spec).cwiseAbs().maxCoeff());
    }
  }
  out.push_back(at_most("trace_preservation", trace, 1e-12));
  out.push_back(at_most("hermiticity_preservation", herm, 1e-12));
  out.push_back({"positivity_preservation", min_eig >= -1e-10, min_eig, -1e-10,
                 "minimum eigenvalue must be at least"});
  out.push_back(at_most("semigroup", semigroup, 1e-11));
  out.push_back(at_most("maximally_mixed_fixed_point", fixed, 1e-13));

  double rise = 0.0, below = 0.0, above = 0.0;
  std::vector<ClosedForm> forms;
  for (const ChannelKind& ch :
       {ChannelKind{channel::Epr{}}, ChannelKind{channel::GhzStd{}},
        ChannelKind{channel::WStd{}}}) {
    for (NoiseKind noise : kAllNoiseKinds) forms.push_back(closed_form(ch, noise));
  }
  forms.push_back(closed_form_epr_axes({Axis::X, Axis::Z}));
  for (const auto& f : forms) {
    double prev = f.averaged(0.0);
    for (int i = 1; i < 200; ++i) {
      const double v = f.averaged(3.0 * i / 199);
      rise = std::max(rise, v - prev);
      below = std::max(below, 0.5 - v);
      above = std::max(above, v - 1.0);
      prev = v;
    }
  }
  out.push_back({"fbar_monotone", rise <= 0.0, rise, 0.0, "largest increase"});
  out.push_back({"fbar_bounds", below <= 1e-15 && above <= 1e-15,
                 std::max(below, above), 0.0, "largest excursion outside [1/2, 1]"});
  return out;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  const auto add = [&](CheckResult r) { results.push_back(std::move(r)); };
  const auto add_all = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) results.push_back(std::move(r));
  };

  add(guarded("channel_solutions_expm_vs_closed", check_channel_oracles));
  add(guarded("rk4_vs_expm", [&] { return check_rk4(options.rk4_steps); }));

  std::vector<CircuitUnitary> circuits;
  try {
    circuits.push_back(build_circuit(channel::Epr{}));
    circuits.push_back(build_circuit(channel::GhzStd{}));
    circuits.push_back(build_circuit(channel::WStd{}));
  } catch (const std::exception& e) {
    add({"build_circuits", false, std::nan(""), 0.0, e.what()});
  }
  if (circuits.size() == 3) {
    add(check_certificates(circuits));
    add(guarded("table1_average", [&] { return check_table1(circuits, false); }));
    add(guarded("table1_pointwise", [&] { return check_table1(circuits, true); }));
    add(guarded("isotropic_equality",
                [&] { return check_isotropic_equality(circuits[1], circuits[2]); }));
    add(guarded("epr_same_mixed_isotropic", [&] { return check_epr(circuits[0]); }));
  }
  add_all(check_appendix());
  add_all(check_groverian(options.seed));
  add_all(check_crossover());
  add(check_asymptotes());
  add_all(check_properties());
  return results;
}

}  // namespace nqt
