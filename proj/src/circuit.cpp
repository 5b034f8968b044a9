#include "nqt/teleport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "nqt/errors.hpp"

namespace nqt {

namespace {

constexpr double kUnitarityTol = 1e-12;
constexpr double kPerfectTeleportTol = 1e-10;
constexpr double kClosedFormTol = 1e-9;

int channel_qubits(const ChannelKind& channel) {
  return make_channel(channel).n_qubits();
}

}  // namespace

std::string describe(const GateSpec& gate) {
  std::ostringstream out;
  switch (gate.kind) {
    case GateKind::H: out << "H"; break;
    case GateKind::X: out << "X"; break;
    case GateKind::Y: out << "Y"; break;
    case GateKind::Z: out << "Z"; break;
    case GateKind::CNOT: out << "CNOT"; break;
    case GateKind::CZ: out << "CZ"; break;
    case GateKind::UTilde: out << "UTILDE"; break;
  }
  out << "(";
  for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
    if (i > 0) out << (gate.qubits.size() == 2 ? "->" : ",");
    out << gate.qubits[i];
  }
  out << ")";
  return out.str();
}

std::string describe(const std::vector<GateSpec>& gates) {
  std::string s;
  for (const auto& g : gates) {
    if (!s.empty()) s += " ";
    s += describe(g);
  }
  return s;
}

ComplexMatrix u_tilde() {
  const double s = std::sqrt(2.0);
  ComplexMatrix m(8, 8);
  m << 0, 1, 1, 0, s, 0, 0, 0,
       0, 0, 0, 2, 0, 0, 0, 0,
       0, 0, 0, 0, 0, 0, 0, 2,
       s, 0, 0, 0, 0, 1, 1, 0,
       0, 1, 1, 0, -s, 0, 0, 0,
       0, s, -s, 0, 0, 0, 0, 0,
       0, 0, 0, 0, 0, s, -s, 0,
       s, 0, 0, 0, 0, -1, -1, 0;
  return 0.5 * m;
}

namespace {

// Embeds a 2^k x 2^k operator acting on an ordered list of qubits.
ComplexMatrix embed_multi(const ComplexMatrix& op, const std::vector<int>& qubits,
                          int n_qubits) {
  const int k = static_cast<int>(qubits.size());
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  const auto bit_of = [&](Eigen::Index idx, int qubit) {
    return (idx >> (n_qubits - qubit)) & 1;
  };
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index sub_col = 0;
    Eigen::Index rest = col;
    for (int i = 0; i < k; ++i) {
      sub_col = (sub_col << 1) | bit_of(col, qubits[i]);
      rest &= ~(Eigen::Index{1} << (n_qubits - qubits[i]));
    }
    for (Eigen::Index sub_row = 0; sub_row < op.rows(); ++sub_row) {
      const Complex amp = op(sub_row, sub_col);
      if (amp == Complex(0.0, 0.0)) continue;
      Eigen::Index row = rest;
      for (int i = 0; i < k; ++i) {
        row |= ((sub_row >> (k - 1 - i)) & 1) << (n_qubits - qubits[i]);
      }
      out(row, col) += amp;
    }
  }
  return out;
}

ComplexMatrix controlled(const ComplexMatrix& target_op, int control, int target,
                         int n_qubits) {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  const QubitIndex c(control, n_qubits);
  const QubitIndex t(target, n_qubits);
  return embed(p0, c, n_qubits) +
         embed(p1, c, n_qubits) * embed(target_op, t, n_qubits);
}

}  // namespace

ComplexMatrix gate_matrix(const GateSpec& gate, int n_qubits) {
  std::set<int> distinct(gate.qubits.begin(), gate.qubits.end());
  require(distinct.size() == gate.qubits.size(), describe(gate) + ": repeated qubit");
  for (int q : gate.qubits) QubitIndex(q, n_qubits);

  const auto arity = [&](std::size_t n) {
    require(gate.qubits.size() == n, describe(gate) + ": wrong number of qubits");
  };
  switch (gate.kind) {
    case GateKind::H:
      arity(1);
      return embed(pauli::hadamard(), QubitIndex(gate.qubits[0], n_qubits), n_qubits);
    case GateKind::X:
      arity(1);
      return embed(pauli::x(), QubitIndex(gate.qubits[0], n_qubits), n_qubits);
    case GateKind::Y:
      arity(1);
      return embed(pauli::y(), QubitIndex(gate.qubits[0], n_qubits), n_qubits);
    case GateKind::Z:
      arity(1);
      return embed(pauli::z(), QubitIndex(gate.qubits[0], n_qubits), n_qubits);
    case GateKind::CNOT:
      arity(2);
      return controlled(pauli::x(), gate.qubits[0], gate.qubits[1], n_qubits);
    case GateKind::CZ:
      arity(2);
      return controlled(pauli::z(), gate.qubits[0], gate.qubits[1], n_qubits);
    case GateKind::UTilde:
      arity(3);
      return embed_multi(u_tilde(), gate.qubits, n_qubits);
  }
  throw ContractViolation("unknown gate kind");
}

ComplexMatrix compose(const std::vector<GateSpec>& gates, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& g : gates) u = gate_matrix(g, n_qubits) * u;
  return u;
}

double noiseless_defect(const ComplexMatrix& u, const DensityMatrix& channel,
                        int theta_points, int phi_points) {
  const TeleportMap map(u, channel);
  double worst = 0.0;
  for (double th : theta_grid(theta_points)) {
    for (double ph : phi_grid(phi_points)) {
      worst = std::max(worst, std::abs(1.0 - map.fidelity({th, ph})));
    }
  }
  return worst;
}

double closed_form_defect(const ComplexMatrix& u, const ChannelKind& channel) {
  const int nq = channel_qubits(channel);
  double worst = 0.0;
  for (NoiseKind noise : kAllNoiseKinds) {
    const ClosedForm form = closed_form(channel, noise);
    for (double kt : {0.1, 0.5, 1.0}) {
      const TeleportMap map(
          u, noisy_channel(channel, NoiseSpec::from_kind(noise, 1.0, nq), kt));
      for (double th : theta_grid(5)) {
        for (double ph : phi_grid(5)) {
          worst = std::max(worst, std::abs(map.fidelity({th, ph}) -
                                           form.pointwise(th, ph, kt)));
        }
      }
    }
  }
  return worst;
}

CircuitUnitary::CircuitUnitary(ChannelKind channel, std::vector<GateSpec> gates)
    : channel_(std::move(channel)),
      gates_(std::move(gates)),
      n_qubits_(channel_qubits(channel_) + 1),
      matrix_(compose(gates_, n_qubits_)) {
  const double unitary = unitarity_defect(matrix_);
  if (unitary >= kUnitarityTol) {
    throw NumericalError("circuit " + describe(gates_) +
                         " is not unitary, defect " + std::to_string(unitary));
  }
  const double defect = noiseless_defect(
      matrix_, DensityMatrix::from_pure(make_channel(channel_)));
  if (defect >= kPerfectTeleportTol) {
    throw NumericalError("circuit " + describe(gates_) +
                         " does not teleport perfectly, max |1 - F| = " +
                         std::to_string(defect));
  }
}

namespace {

std::vector<GateSpec> epr_gates() {
  return {GateSpec::cnot(1, 2), GateSpec::h(1), GateSpec::cnot(2, 3),
          GateSpec::cz(1, 3)};
}

std::vector<GateSpec> ghz_gates() {
  return {GateSpec::cnot(1, 2), GateSpec::cnot(1, 3), GateSpec::h(1),
          GateSpec::cnot(2, 4), GateSpec::cz(1, 4)};
}

// Candidates in a fixed order: Ũ on an ordering of Alice's qubits, an
// optional entangling CNOT from the input, H on the input, then corrections
// on Bob's qubit (one CNOT and a set of CZs).
std::vector<std::vector<GateSpec>> w_candidates() {
  std::array<int, 3> order = {1, 2, 3};
  const std::vector<std::vector<GateSpec>> entanglers = {
      {GateSpec::cnot(1, 2)}, {GateSpec::cnot(1, 3)}, {}};
  const std::vector<std::vector<int>> z_controls = {
      {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
  std::vector<std::vector<GateSpec>> out;
  do {
    for (const auto& ent : entanglers) {
      for (int x_control : {2, 3}) {
        for (const auto& zs : z_controls) {
          std::vector<GateSpec> g = {
              GateSpec::u_tilde(order[0], order[1], order[2])};
          g.insert(g.end(), ent.begin(), ent.end());
          g.push_back(GateSpec::h(1));
          for (int z : zs) g.push_back(GateSpec::cz(z, 4));
          g.push_back(GateSpec::cnot(x_control, 4));
          out.push_back(std::move(g));
        }
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

CircuitUnitary search_w_circuit() {
  const ChannelKind w = channel::WStd{};
  const DensityMatrix pure = DensityMatrix::from_pure(make_channel(w));
  std::string best;
  double best_noiseless = std::numeric_limits<double>::infinity();
  double best_closed = std::numeric_limits<double>::infinity();
  for (const auto& gates : w_candidates()) {
    const ComplexMatrix u = compose(gates, 4);
    const double noiseless = noiseless_defect(u, pure);
    double closed = std::numeric_limits<double>::infinity();
    if (noiseless < kPerfectTeleportTol) {
      closed = closed_form_defect(u, w);
      if (closed < kClosedFormTol) return CircuitUnitary(w, gates);
    }
    if (std::tie(noiseless, closed) < std::tie(best_noiseless, best_closed)) {
      best_noiseless = noiseless;
      best_closed = closed;
      best = describe(gates);
    }
  }
  throw NumericalError("no W teleportation circuit matches the closed forms; best "
                       "candidate " + best + " with noiseless defect " +
                       std::to_string(best_noiseless) + " and closed-form defect " +
                       std::to_string(best_closed));
}

}  // namespace

CircuitUnitary build_circuit(const ChannelKind& channel) {
  if (std::holds_alternative<channel::Epr>(channel)) {
    return CircuitUnitary(channel, epr_gates());
  }
  if (std::holds_alternative<channel::GhzStd>(channel)) {
    CircuitUnitary u(channel, ghz_gates());
    const double defect = closed_form_defect(u.matrix(), channel);
    if (defect >= kClosedFormTol) {
      throw NumericalError("GHZ circuit disagrees with the closed forms by " +
                           std::to_string(defect));
    }
    return u;
  }
  if (std::holds_alternative<channel::WStd>(channel)) {
    return search_w_circuit();
  }
  throw ContractViolation("build_circuit: no circuit for channel '" +
                          channel_name(channel) + "'");
}

}  // namespace nqt
