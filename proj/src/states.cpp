#include "nqt/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nqt/errors.hpp"

namespace nqt {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ComplexVector basis_amplitudes(
    int n_qubits, std::initializer_list<std::pair<int, Complex>> entries) {
  ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
  for (const auto& [index, amp] : entries) v[index] = amp;
  return v;
}

void require_unit(const ComplexVector& v, const char* what) {
  require(v.size() == 2, std::string(what) + " must be a single-qubit state");
  require(std::abs(v.squaredNorm() - 1.0) <= kStateNormTol,
          std::string(what) + " must be normalized");
}

}  // namespace

std::string channel_name(const ChannelKind& kind) {
  return std::visit(
      Overloaded{[](const channel::Epr&) { return std::string("epr"); },
                 [](const channel::GhzStd&) { return std::string("ghz"); },
                 [](const channel::WStd&) { return std::string("w"); },
                 [](const channel::GhzGeneral&) {
                   return std::string("ghz_general");
                 },
                 [](const channel::WGeneral&) {
                   return std::string("w_general");
                 },
                 [](const channel::PsiTilde&) {
                   return std::string("psi_tilde");
                 }},
      kind);
}

StateVector bloch_state(const BlochAngles& angles) {
  const double pi = std::numbers::pi;
  require(angles.theta >= 0.0 && angles.theta <= pi,
          "theta must lie in [0, pi]");
  require(angles.phi >= 0.0 && angles.phi < 2.0 * pi,
          "phi must lie in [0, 2pi)");
  ComplexVector v(2);
  v[0] = std::cos(angles.theta / 2) * std::polar(1.0, angles.phi / 2);
  v[1] = std::sin(angles.theta / 2) * std::polar(1.0, -angles.phi / 2);
  return StateVector(std::move(v));
}

StateVector make_channel(const ChannelKind& kind) {
  const double r2 = 1.0 / std::sqrt(2.0);
  return std::visit(
      Overloaded{
          [&](const channel::Epr&) {
            return StateVector(basis_amplitudes(2, {{0, r2}, {3, r2}}));
          },
          [&](const channel::GhzStd&) {
            return StateVector(basis_amplitudes(3, {{0, r2}, {7, r2}}));
          },
          [&](const channel::WStd&) {
            return StateVector(
                basis_amplitudes(3, {{4, 0.5}, {2, 0.5}, {1, r2}}));
          },
          [](const channel::GhzGeneral& g) {
            return StateVector(basis_amplitudes(3, {{0, g.a}, {7, g.b}}));
          },
          [](const channel::WGeneral& w) {
            return StateVector(
                basis_amplitudes(3, {{1, w.a}, {2, w.b}, {4, w.c}}));
          },
          [&](const channel::PsiTilde& p) {
            require_unit(p.q1, "q1");
            require_unit(p.q2, "q2");
            ComplexVector v = ComplexVector::Zero(8);
            v.segment(0, 2) = r2 * p.q1;  // |00 q1>
            v.segment(6, 2) = r2 * p.q2;  // |11 q2>
            return StateVector(std::move(v));
          }},
      kind);
}

namespace {

// Contracts psi with conj(factor_k) for every qubit k != skip and returns
// the remaining single-qubit vector. Its squared norm is the best overlap
// achievable by updating factor `skip` alone.
ComplexVector contract_except(const ComplexVector& psi,
                              const std::vector<ComplexVector>& factors,
                              int skip) {
  const int n = static_cast<int>(factors.size());
  ComplexVector out = ComplexVector::Zero(2);
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
    Complex w = psi[idx];
    if (w == Complex(0.0, 0.0)) continue;
    for (int k = 0; k < n && w != Complex(0.0, 0.0); ++k) {
      if (k == skip) continue;
      const int bit = static_cast<int>((idx >> (n - 1 - k)) & 1);
      w *= std::conj(factors[k][bit]);
    }
    out[(idx >> (n - 1 - skip)) & 1] += w;
  }
  return out;
}

ComplexVector product_state(const std::vector<ComplexVector>& factors) {
  ComplexVector v = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) v = kron(v, factors[k]);
  return v;
}

}  // namespace

double groverian_pure(const StateVector& psi, const GroverianOptions& opts) {
  const int n = psi.n_qubits();
  require(n >= 2, "groverian_pure: need a multi-qubit state");
  require(opts.starts >= 1 && opts.max_iterations >= 1,
          "groverian_pure: need at least one start and one iteration");
  const ComplexVector& amps = psi.amplitudes();

  double best_residual = 1.0;
  for (int start = 0; start < opts.starts; ++start) {
    std::mt19937_64 rng(opts.seed * 1000003ULL + static_cast<std::uint64_t>(start));
    std::normal_distribution<double> gauss;
    std::vector<ComplexVector> factors(n, ComplexVector(2));
    for (auto& f : factors) {
      for (int i = 0; i < 2; ++i) f[i] = Complex(gauss(rng), gauss(rng));
      f.normalize();
    }

    double overlap = 0.0;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
      double previous = overlap;
      for (int k = 0; k < n; ++k) {
        ComplexVector v = contract_except(amps, factors, k);
        const double norm = v.norm();
        if (norm == 0.0) continue;
        factors[k] = v / norm;
        overlap = norm * norm;
      }
      if (std::abs(overlap - previous) < opts.tolerance) break;
    }

    // 1 - P_max evaluated as the squared distance from psi to its projection
    // on the product state; this stays accurate when P_max is close to 1.
    ComplexVector phi = product_state(factors);
    phi.normalize();
    const Complex c = phi.dot(amps);
    const double residual = (amps - c * phi).squaredNorm();
    best_residual = std::min(best_residual, residual);
  }
  return std::sqrt(std::max(best_residual, 0.0));
}

}  // namespace nqt
