#include "nqt/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nqt/errors.hpp"
#include "nqt/parallel.hpp"

namespace nqt {

namespace {

constexpr double kImagResidueTol = 1e-13;

std::vector<int> all_but_last(int n_qubits) {
  std::vector<int> offsets(n_qubits - 1);
  for (int i = 0; i < n_qubits - 1; ++i) offsets[i] = i;
  return offsets;
}

double overlap(const ComplexMatrix& rho, const BlochAngles& in_state) {
  const ComplexVector psi = bloch_state(in_state).amplitudes();
  const Complex f = psi.dot(rho * psi);
  if (std::abs(f.imag()) > kImagResidueTol) {
    throw NumericalError("fidelity has imaginary residue " +
                         std::to_string(f.imag()));
  }
  return f.real();
}

}  // namespace

std::vector<double> theta_grid(int points) {
  require(points >= 2, "theta grid needs at least two points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = std::numbers::pi * i / (points - 1);
  return g;
}

std::vector<double> phi_grid(int points) {
  require(points >= 2, "phi grid needs at least two points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = 2 * std::numbers::pi * i / points;
  return g;
}

DensityMatrix noisy_channel(const ChannelKind& channel, const NoiseSpec& spec,
                            double t) {
  return evolve_expm(DensityMatrix::from_pure(make_channel(channel)), spec, t);
}

DensityMatrix rho_out(const CircuitUnitary& u, const BlochAngles& in_state,
                      const DensityMatrix& channel_state) {
  require(channel_state.n_qubits() + 1 == u.n_qubits(),
          "rho_out: channel state does not fit the circuit register");
  const ComplexMatrix rho_in = bloch_state(in_state).projector();
  const ComplexMatrix full =
      u.matrix() * kron(rho_in, channel_state.matrix()) * u.matrix().adjoint();
  return DensityMatrix(
      partial_trace_raw(full, u.n_qubits(), all_but_last(u.n_qubits())));
}

double fidelity(const DensityMatrix& rho, const BlochAngles& in_state) {
  require(rho.n_qubits() == 1, "fidelity: rho must be a single-qubit state");
  return overlap(rho.matrix(), in_state);
}

TeleportMap::TeleportMap(const ComplexMatrix& u,
                         const DensityMatrix& channel_state) {
  const int n = qubits_for_dim(u.rows());
  require(channel_state.n_qubits() + 1 == n,
          "TeleportMap: channel state does not fit the circuit register");
  const auto traced = all_but_last(n);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      ComplexMatrix basis = ComplexMatrix::Zero(2, 2);
      basis(a, b) = 1.0;
      images_[a][b] = partial_trace_raw(
          u * kron(basis, channel_state.matrix()) * u.adjoint(), n, traced);
    }
  }
}

ComplexMatrix TeleportMap::output(const ComplexMatrix& rho_in) const {
  require(rho_in.rows() == 2 && rho_in.cols() == 2,
          "TeleportMap: input must be 2x2");
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out += rho_in(a, b) * images_[a][b];
  }
  return out;
}

double TeleportMap::fidelity(const BlochAngles& in_state) const {
  return overlap(output(bloch_state(in_state).projector()), in_state);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  require(n >= 1, "gauss_legendre: need at least one node");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Three-term recurrence for P_n(z) and its derivative.
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1 - z * z) * dp * dp);
  }
  return {x, w};
}

SphereQuadrature::SphereQuadrature(int theta_nodes, int phi_nodes) {
  require(theta_nodes >= 1 && phi_nodes >= 1,
          "SphereQuadrature: node counts must be positive");
  auto [x, w] = gauss_legendre(theta_nodes);
  for (int i = 0; i < theta_nodes; ++i) {
    thetas_.push_back(std::acos(x[i]));
    weights_.push_back(w[i]);
  }
  for (int j = 0; j < phi_nodes; ++j) {
    phis_.push_back(2 * std::numbers::pi * j / phi_nodes);
  }
}

double avg_fidelity_numeric(const CircuitUnitary& u,
                            const DensityMatrix& channel_state) {
  static const SphereQuadrature quadrature;
  const TeleportMap map(u, channel_state);
  return quadrature.average(
      [&](double th, double ph) { return map.fidelity({th, ph}); });
}

FidelityReport fidelity_report(const CircuitUnitary& u, NoiseKind noise,
                               double kt, int theta_points, int phi_points) {
  const int nq = u.n_qubits() - 1;
  const DensityMatrix state =
      noisy_channel(u.channel(), NoiseSpec::from_kind(noise, 1.0, nq), kt);
  const TeleportMap map(u, state);
  const ClosedForm form = closed_form(u.channel(), noise);

  FidelityReport report;
  for (double th : theta_grid(theta_points)) {
    for (double ph : phi_grid(phi_points)) {
      const FidelitySample s{th, ph, map.fidelity({th, ph}),
                             form.pointwise(th, ph, kt)};
      report.max_abs_delta =
          std::max(report.max_abs_delta, std::abs(s.numeric - s.oracle));
      report.grid.push_back(s);
    }
  }
  report.f_bar_numeric = avg_fidelity_numeric(u, state);
  report.f_bar_oracle = form.averaged(kt);
  return report;
}

bool AxisSweepReport::is_same_axis(const std::vector<Axis>& assignment) {
  return std::all_of(assignment.begin(), assignment.end(),
                     [&](Axis a) { return a == assignment.front(); });
}

bool AxisSweepReport::dominates_everywhere() const {
  return std::all_of(same_axis_dominates.begin(), same_axis_dominates.end(),
                     [](bool b) { return b; });
}

AxisSweepReport axis_assignment_sweep(const CircuitUnitary& u,
                                      const std::vector<double>& kt_grid) {
  require(!kt_grid.empty(), "axis_assignment_sweep: empty kt grid");
  const int k = u.n_qubits() - 1;
  AxisSweepReport report;
  report.kt_grid = kt_grid;

  std::size_t total = 1;
  for (int i = 0; i < k; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Axis> axes(k);
    std::size_t rest = code;
    for (int q = k - 1; q >= 0; --q) {
      axes[q] = static_cast<Axis>(rest % 3);
      rest /= 3;
    }
    report.assignments.push_back(std::move(axes));
  }

  report.fbar.assign(total, std::vector<double>(kt_grid.size()));
  parallel_for(total * kt_grid.size(), [&](std::size_t job) {
    const std::size_t a = job / kt_grid.size();
    const std::size_t g = job % kt_grid.size();
    const NoiseSpec spec = NoiseSpec::from_axes(report.assignments[a], 1.0);
    report.fbar[a][g] = avg_fidelity_numeric(
        u, noisy_channel(u.channel(), spec, kt_grid[g]));
  });

  for (std::size_t g = 0; g < kt_grid.size(); ++g) {
    double min_same = 2.0, max_mixed = -1.0;
    for (std::size_t a = 0; a < total; ++a) {
      if (AxisSweepReport::is_same_axis(report.assignments[a])) {
        min_same = std::min(min_same, report.fbar[a][g]);
      } else {
        max_mixed = std::max(max_mixed, report.fbar[a][g]);
      }
    }
    report.same_axis_dominates.push_back(min_same >= max_mixed - 1e-12);
  }
  return report;
}

}  // namespace nqt
