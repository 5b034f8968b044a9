#pragma once

// Teleportation circuits in deferred-measurement form. Qubit 1 holds the
// unknown input, qubits 2..n the channel state, and the last qubit belongs
// to Bob. Each circuit is one unitary followed by a trace over qubits
// 1..n-1.

#include <string>
#include <utility>
#include <vector>

#include "nqt/closed_form.hpp"
#include "nqt/lindblad.hpp"
#include "nqt/states.hpp"
#include "nqt/tensor.hpp"

namespace nqt {

enum class GateKind { H, X, Y, Z, CNOT, CZ, UTilde };

/// Gate on 1-based qubits. Controlled gates list (control, target); UTilde
/// lists an ordered triple whose first entry is the most significant bit of
/// the Ũ matrix index.
struct GateSpec {
  GateKind kind;
  std::vector<int> qubits;

  static GateSpec h(int q) { return {GateKind::H, {q}}; }
  static GateSpec cnot(int c, int t) { return {GateKind::CNOT, {c, t}}; }
  static GateSpec cz(int c, int t) { return {GateKind::CZ, {c, t}}; }
  static GateSpec u_tilde(int a, int b, int c) {
    return {GateKind::UTilde, {a, b, c}};
  }
};

std::string describe(const GateSpec& gate);
std::string describe(const std::vector<GateSpec>& gates);

/// The 8x8 Ũ gate that maps the W-channel teleportation onto the GHZ one.
ComplexMatrix u_tilde();

ComplexMatrix gate_matrix(const GateSpec& gate, int n_qubits);

/// Product of the gates, the first gate applied first.
ComplexMatrix compose(const std::vector<GateSpec>& gates, int n_qubits);

class CircuitUnitary {
 public:
  /// Throws NumericalError unless the product of `gates` is unitary within
  /// 1e-12 and teleports perfectly through the noiseless channel state.
  CircuitUnitary(ChannelKind channel, std::vector<GateSpec> gates);

  int n_qubits() const { return n_qubits_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  const ChannelKind& channel() const { return channel_; }
  const std::vector<GateSpec>& gates() const { return gates_; }

 private:
  ChannelKind channel_;
  std::vector<GateSpec> gates_;
  int n_qubits_;
  ComplexMatrix matrix_;
};

/// Largest |1 - F| over a theta x phi grid spanning [0, pi] x [0, 2pi),
/// noiseless channel.
double noiseless_defect(const ComplexMatrix& u, const DensityMatrix& channel,
                        int theta_points = 9, int phi_points = 9);

/// Largest |F_numeric - F_closed| over all noise kinds, kt in
/// {0.1, 0.5, 1.0} and a 5 x 5 angle grid.
double closed_form_defect(const ComplexMatrix& u, const ChannelKind& channel);

/// Builds and certifies the circuit for Epr, GhzStd or WStd. The W circuit
/// is found by a deterministic search over Ũ placements and correction
/// wirings; throws NumericalError naming the best candidate if none passes.
CircuitUnitary build_circuit(const ChannelKind& channel);

/// Output state of Bob's qubit, computed by conjugation and partial trace.
DensityMatrix rho_out(const CircuitUnitary& u, const BlochAngles& in_state,
                      const DensityMatrix& channel_state);

/// <psi_in| rho |psi_in> for a single-qubit rho.
double fidelity(const DensityMatrix& rho, const BlochAngles& in_state);

/// The input -> output map of a circuit for a fixed channel state, stored as
/// the images of the four operators |a><b|. Equivalent to rho_out but cheap
/// to evaluate on many inputs.
class TeleportMap {
 public:
  TeleportMap(const ComplexMatrix& u, const DensityMatrix& channel_state);
  TeleportMap(const CircuitUnitary& u, const DensityMatrix& channel_state)
      : TeleportMap(u.matrix(), channel_state) {}

  ComplexMatrix output(const ComplexMatrix& rho_in) const;
  double fidelity(const BlochAngles& in_state) const;

 private:
  ComplexMatrix images_[2][2];
};

/// Gauss-Legendre in cos(theta) times a uniform rule in phi; averages a
/// function over the unit sphere with weight sin(theta) / 4pi.
class SphereQuadrature {
 public:
  explicit SphereQuadrature(int theta_nodes = 16, int phi_nodes = 32);

  template <class F>
  double average(F&& f) const {
    double total = 0.0;
    for (std::size_t i = 0; i < thetas_.size(); ++i) {
      double ring = 0.0;
      for (double phi : phis_) ring += f(thetas_[i], phi);
      total += weights_[i] * ring / static_cast<double>(phis_.size());
    }
    return 0.5 * total;
  }

  const std::vector<double>& thetas() const { return thetas_; }
  const std::vector<double>& phis() const { return phis_; }

 private:
  std::vector<double> thetas_;
  std::vector<double> weights_;
  std::vector<double> phis_;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

double avg_fidelity_numeric(const CircuitUnitary& u,
                            const DensityMatrix& channel_state);

struct FidelitySample {
  double theta, phi, numeric, oracle;
};

struct FidelityReport {
  std::vector<FidelitySample> grid;
  double f_bar_numeric = 0.0;
  double f_bar_oracle = 0.0;
  double max_abs_delta = 0.0;
};

/// Evolves the channel under `noise` (unit rate) for kt, then samples F on a
/// theta_points x phi_points grid and compares with the closed form.
FidelityReport fidelity_report(const CircuitUnitary& u, NoiseKind noise,
                               double kt, int theta_points, int phi_points);

/// Evenly spaced points covering [0, pi] and [0, 2pi) respectively.
std::vector<double> theta_grid(int points);
std::vector<double> phi_grid(int points);

/// Channel state evolved from the pure channel under `spec` for time t.
DensityMatrix noisy_channel(const ChannelKind& channel, const NoiseSpec& spec,
                            double t);

struct AxisSweepReport {
  std::vector<std::vector<Axis>> assignments;
  /// fbar[a][k]: average fidelity for assignment a at kt_grid[k].
  std::vector<std::vector<double>> fbar;
  std::vector<double> kt_grid;
  /// Per grid point: min over same-axis assignments >= max over mixed ones.
  std::vector<bool> same_axis_dominates;

  static bool is_same_axis(const std::vector<Axis>& assignment);
  bool dominates_everywhere() const;
};

/// Enumerates all 3^k per-qubit axis assignments of unit-rate dephasing on
/// the k channel qubits and computes F-bar numerically for each.
AxisSweepReport axis_assignment_sweep(const CircuitUnitary& u,
                                      const std::vector<double>& kt_grid);

}  // namespace nqt
