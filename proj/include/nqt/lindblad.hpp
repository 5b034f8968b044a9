#pragma once

// Markovian dephasing-type noise on a qubit register:
//
//   d rho / dt = sum_k ( L_k rho L_k^dagger - 1/2 {L_k^dagger L_k, rho} ),
//   L_k = sqrt(kappa_k) sigma_{axis_k} acting on qubit_k,
//
// with no system Hamiltonian. Qubit labels are 1-based within the register
// being evolved (for a three-qubit channel, qubit 1 here is the first
// channel qubit of the teleportation register).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nqt/states.hpp"
#include "nqt/tensor.hpp"

namespace nqt {

enum class Axis { X, Y, Z };

const ComplexMatrix& axis_matrix(Axis axis);
char axis_name(Axis axis);

struct LindbladTerm {
  int qubit = 1;
  Axis axis = Axis::Z;
  double kappa = 0.0;
};

/// Single shared rate on every qubit of the channel register.
enum class NoiseKind { AxisX, AxisY, AxisZ, Isotropic };

inline constexpr NoiseKind kAllNoiseKinds[] = {
    NoiseKind::AxisX, NoiseKind::AxisY, NoiseKind::AxisZ,
    NoiseKind::Isotropic};

std::string noise_name(NoiseKind kind);
std::optional<NoiseKind> parse_noise(std::string_view text);

class NoiseSpec {
 public:
  NoiseSpec() = default;
  /// Throws ContractViolation on negative rates or repeated (qubit, axis).
  explicit NoiseSpec(std::vector<LindbladTerm> terms);

  /// 3 terms per qubit for Isotropic, 1 otherwise.
  static NoiseSpec from_kind(NoiseKind kind, double kappa, int n_qubits);
  /// One term per qubit, axis taken from `axes[qubit - 1]`.
  static NoiseSpec from_axes(const std::vector<Axis>& axes, double kappa);

  const std::vector<LindbladTerm>& terms() const { return terms_; }
  double kappa_max() const;
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<LindbladTerm> terms_;
};

/// Superoperator acting on column-stacked vec(rho), dimension 4^n x 4^n.
ComplexMatrix liouvillian(const NoiseSpec& spec, int n_qubits);

/// Right-hand side of the master equation evaluated directly on a matrix.
ComplexMatrix dissipator(const ComplexMatrix& rho, const NoiseSpec& spec);

/// Exact propagation: unvec(expm(L t) vec(rho0)).
DensityMatrix evolve_expm(const DensityMatrix& rho0, const NoiseSpec& spec,
                          double t);

/// max(1000, ceil(100 * kappa_max * t))
int default_rk4_steps(const NoiseSpec& spec, double t);

/// Classical fixed-step RK4 on the matrix-form equation. `steps` defaults to
/// default_rk4_steps.
DensityMatrix evolve_rk4(const DensityMatrix& rho0, const NoiseSpec& spec,
                         double t, std::optional<int> steps = std::nullopt);

/// Analytic noisy channel state for GHZ_STD or W_STD under a NoiseKind with
/// unit rate, evaluated at kappa*t = kt.
DensityMatrix closed_channel(const ChannelKind& channel, NoiseKind noise,
                             double kt);

struct AppendixDiagnostics {
  /// Max residual of the x-noise off-diagonal ODE group on the closed forms.
  double x_residual = 0.0;
  /// Same for the y-noise group.
  double y_residual = 0.0;
  /// Max residual of the y-noise master equation on the conjugated x-noise
  /// trajectory (u x u x u) rho_x(t) (u x u x u)^dagger.
  double conjugated_residual = 0.0;
  /// Max-entry distance of the conjugated trajectory at t = 0 from rho_GHZ.
  double boundary_distance = 0.0;

  bool x_ok() const { return x_residual < 1e-12; }
  bool y_ok() const { return y_residual < 1e-12; }
  bool conjugated_solves_y() const { return conjugated_residual < 1e-12; }
  bool conjugated_violates_boundary() const {
    return boundary_distance > 0.1;
  }
  bool passed() const {
    return x_ok() && y_ok() && conjugated_solves_y() &&
           conjugated_violates_boundary();
  }
};

/// Checks the GHZ x/y-noise coherence subsystems on `kt_grid` (kappa = 1)
/// and the boundary-condition failure of the conjugated x solution.
AppendixDiagnostics appendix_check(const std::vector<double>& kt_grid);

/// u with u sigma_x u^dagger = sigma_y, u = (sigma_x + sigma_y) / sqrt(2).
ComplexMatrix x_to_y_rotation();

}  // namespace nqt
