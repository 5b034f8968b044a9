#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "nqt/tensor.hpp"

namespace nqt {

/// Polar angle theta in [0, pi], azimuth phi in [0, 2pi).
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

namespace channel {

struct Epr {};
struct GhzStd {};
struct WStd {};

/// a|000> + b|111>
struct GhzGeneral {
  Complex a;
  Complex b;
};

/// a|001> + b|010> + c|100>
struct WGeneral {
  Complex a;
  Complex b;
  Complex c;
};

/// (|0 0 q1> + |1 1 q2>) / sqrt(2) for single-qubit states q1, q2.
struct PsiTilde {
  ComplexVector q1;
  ComplexVector q2;
};

}  // namespace channel

using ChannelKind =
    std::variant<channel::Epr, channel::GhzStd, channel::WStd,
                 channel::GhzGeneral, channel::WGeneral, channel::PsiTilde>;

std::string channel_name(const ChannelKind& kind);

/// cos(theta/2) e^{i phi/2}|0> + sin(theta/2) e^{-i phi/2}|1>.
StateVector bloch_state(const BlochAngles& angles);

StateVector make_channel(const ChannelKind& kind);

struct GroverianOptions {
  int starts = 20;
  int max_iterations = 500;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
};

/// Groverian entanglement sqrt(1 - P_max) of a pure multi-qubit state, with
/// P_max the largest squared overlap with a product state. Found by
/// alternating single-qubit updates from seeded random starts.
double groverian_pure(const StateVector& psi, const GroverianOptions& opts = {});

}  // namespace nqt
