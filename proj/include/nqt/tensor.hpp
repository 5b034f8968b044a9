#pragma once

// Dense complex linear algebra over small qubit registers.
//
// Basis ordering: qubit 1 is the most significant bit of a register index,
// so for three qubits |000> is index 0 and |111> is index 7.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace nqt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kStateNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kMinEigenvalueFloor = -1e-10;

/// 1-based qubit label within a register of `n_qubits`.
class QubitIndex {
 public:
  QubitIndex(int value, int n_qubits);

  int value() const { return value_; }
  /// Zero-based bit position counted from the most significant end.
  int offset() const { return value_ - 1; }

  friend bool operator==(const QubitIndex&, const QubitIndex&) = default;

 private:
  int value_;
};

/// Normalized pure state over a power-of-two dimension.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  int n_qubits() const { return n_qubits_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  ComplexMatrix projector() const;

 private:
  ComplexVector amplitudes_;
  int n_qubits_;
};

struct DensityDiagnostics {
  double hermiticity_defect = 0.0;  // max |M - M^dagger| entrywise
  double trace_defect = 0.0;        // |tr M - 1|
  double min_eigenvalue = 0.0;

  bool passed() const {
    return hermiticity_defect <= kHermitianTol && trace_defect <= kTraceTol &&
           min_eigenvalue >= kMinEigenvalueFloor;
  }
};

/// Reports structural defects of a candidate density matrix. Never throws
/// on non-square input shapes that are otherwise finite; those report an
/// infinite Hermiticity defect.
DensityDiagnostics validate(const ComplexMatrix& m);

/// Hermitian, unit-trace, positive semidefinite matrix over n qubits.
class DensityMatrix {
 public:
  /// Throws NumericalError if `m` fails `validate`.
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  const ComplexMatrix& matrix() const { return matrix_; }
  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  Complex operator()(Eigen::Index r, Eigen::Index c) const {
    return matrix_(r, c);
  }

 private:
  ComplexMatrix matrix_;
  int n_qubits_;
};

/// Number of qubits for a power-of-two dimension; throws otherwise.
int qubits_for_dim(Eigen::Index dim);

void require_finite(const ComplexMatrix& m, const char* what);

/// Kronecker product; `a` occupies the most significant qubits.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Traces out the listed qubits, keeping the rest in their original order.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<QubitIndex>& traced);

/// Unchecked partial trace on a raw square matrix of 2^n_qubits rows.
/// `traced_offsets` are zero-based bit positions from the most significant
/// end.
ComplexMatrix partial_trace_raw(const ComplexMatrix& m, int n_qubits,
                                const std::vector<int>& traced_offsets);

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant.
ComplexMatrix expm(const ComplexMatrix& m);

/// Embeds a single-qubit operator acting on `qubit` into an n-qubit register.
ComplexMatrix embed(const ComplexMatrix& op, const QubitIndex& qubit,
                    int n_qubits);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double unitarity_defect(const ComplexMatrix& u);
double min_hermitian_eigenvalue(const ComplexMatrix& m);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix hadamard();
}  // namespace pauli

}  // namespace nqt
