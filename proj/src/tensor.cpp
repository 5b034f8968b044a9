#include "nqt/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "nqt/errors.hpp"

namespace nqt {

QubitIndex::QubitIndex(int value, int n_qubits) : value_(value) {
  require(n_qubits >= 1, "register must contain at least one qubit");
  require(value >= 1 && value <= n_qubits,
          "qubit index " + std::to_string(value) + " outside register [1, " +
              std::to_string(n_qubits) + "]");
}

int qubits_for_dim(Eigen::Index dim) {
  require(dim >= 2 && (dim & (dim - 1)) == 0,
          "dimension " + std::to_string(dim) + " is not a power of two");
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

void require_finite(const ComplexMatrix& m, const char* what) {
  require(m.size() > 0, std::string(what) + ": empty matrix");
  require(m.allFinite(), std::string(what) + ": non-finite entry");
}

StateVector::StateVector(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)),
      n_qubits_(qubits_for_dim(amplitudes_.size())) {
  require(amplitudes_.allFinite(), "state vector has non-finite amplitude");
  const double norm2 = amplitudes_.squaredNorm();
  require(std::abs(norm2 - 1.0) <= kStateNormTol,
          "state vector is not normalized (|psi|^2 = " +
              std::to_string(norm2) + ")");
}

ComplexMatrix StateVector::projector() const {
  return amplitudes_ * amplitudes_.adjoint();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "max_abs_diff: shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigenvalue iteration did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

DensityDiagnostics validate(const ComplexMatrix& m) {
  DensityDiagnostics d;
  if (m.rows() != m.cols() || m.size() == 0 || !m.allFinite()) {
    d.hermiticity_defect = std::numeric_limits<double>::infinity();
    d.trace_defect = std::numeric_limits<double>::infinity();
    d.min_eigenvalue = -std::numeric_limits<double>::infinity();
    return d;
  }
  d.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  d.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  d.min_eigenvalue = min_hermitian_eigenvalue(m);
  return d;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  require(matrix_.rows() == matrix_.cols(), "density matrix must be square");
  n_qubits_ = qubits_for_dim(matrix_.rows());
  const auto d = validate(matrix_);
  if (!d.passed()) {
    throw NumericalError(
        "not a density matrix: hermiticity defect " +
        std::to_string(d.hermiticity_defect) + ", trace defect " +
        std::to_string(d.trace_defect) + ", min eigenvalue " +
        std::to_string(d.min_eigenvalue));
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  require(n_qubits >= 1, "maximally_mixed: need at least one qubit");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) /
                       static_cast<double>(dim));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_finite(a, "kron lhs");
  require_finite(b, "kron rhs");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

namespace {

// Scatters the bits of `packed` (most significant first) onto the listed
// bit offsets of an n-qubit index.
std::size_t scatter_bits(std::size_t packed, const std::vector<int>& offsets,
                         int n_qubits) {
  std::size_t full = 0;
  const auto k = offsets.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t bit = (packed >> (k - 1 - i)) & 1U;
    full |= bit << (n_qubits - 1 - offsets[i]);
  }
  return full;
}

}  // namespace

ComplexMatrix partial_trace_raw(const ComplexMatrix& m, int n_qubits,
                                const std::vector<int>& traced_offsets) {
  std::vector<int> kept;
  for (int q = 0; q < n_qubits; ++q) {
    if (std::find(traced_offsets.begin(), traced_offsets.end(), q) ==
        traced_offsets.end()) {
      kept.push_back(q);
    }
  }
  const std::size_t kept_dim = std::size_t{1} << kept.size();
  const std::size_t traced_dim = std::size_t{1} << traced_offsets.size();
  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (std::size_t t = 0; t < traced_dim; ++t) {
    const std::size_t t_bits = scatter_bits(t, traced_offsets, n_qubits);
    for (std::size_t r = 0; r < kept_dim; ++r) {
      const std::size_t row = t_bits | scatter_bits(r, kept, n_qubits);
      for (std::size_t c = 0; c < kept_dim; ++c) {
        const std::size_t col = t_bits | scatter_bits(c, kept, n_qubits);
        out(r, c) += m(row, col);
      }
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<QubitIndex>& traced) {
  const int n = rho.n_qubits();
  require(!traced.empty(), "partial_trace: traced set is empty");
  std::vector<int> offsets;
  for (const auto& q : traced) {
    require(q.value() <= n, "partial_trace: qubit outside register");
    require(std::find(offsets.begin(), offsets.end(), q.offset()) ==
                offsets.end(),
            "partial_trace: duplicate qubit");
    offsets.push_back(q.offset());
  }
  require(static_cast<int>(offsets.size()) < n,
          "partial_trace: cannot trace out the whole register");
  return DensityMatrix(partial_trace_raw(rho.matrix(), n, offsets));
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require(m.rows() == m.cols(), "expm: matrix must be square");
  require_finite(m, "expm");

  // Higham (2005) degree-13 coefficients and scaling threshold.
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const Eigen::Index n = m.rows();
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == 0.0) return ComplexMatrix::Identity(n, n);
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const ComplexMatrix a = m / std::ldexp(1.0, squarings);
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;

  const ComplexMatrix u_inner =
      a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
      b[3] * a2 + b[1] * ident;
  const ComplexMatrix u = a * u_inner;
  const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                          b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

ComplexMatrix embed(const ComplexMatrix& op, const QubitIndex& qubit,
                    int n_qubits) {
  require(op.rows() == 2 && op.cols() == 2, "embed: operator must be 2x2");
  const Eigen::Index left = Eigen::Index{1} << qubit.offset();
  const Eigen::Index right = Eigen::Index{1} << (n_qubits - qubit.value());
  return kron(kron(ComplexMatrix::Identity(left, left), op),
              ComplexMatrix::Identity(right, right));
}

double unitarity_defect(const ComplexMatrix& u) {
  require(u.rows() == u.cols(), "unitarity_defect: matrix must be square");
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

}  // namespace pauli

}  // namespace nqt
