#pragma once

// Analytic teleportation fidelities through noisy channels, as functions of
// the Bloch angles of the input and of kt = kappa * t.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nqt/lindblad.hpp"
#include "nqt/states.hpp"

namespace nqt {

struct ClosedForm {
  std::string channel;
  std::string noise;
  std::function<double(double theta, double phi, double kt)> pointwise;
  std::function<double(double kt)> averaged;
};

/// Channel in {Epr, GhzStd, WStd}; every NoiseKind is supported.
ClosedForm closed_form(const ChannelKind& channel, NoiseKind noise);

/// EPR channel with one unit-rate dephasing term per channel qubit,
/// `axes[i]` acting on channel qubit i + 1. Same-axis pairs reproduce the
/// single-axis forms; distinct axes give the mixed-axis average
/// (3 + 2 e^{-2kt} + e^{-4kt}) / 6.
ClosedForm closed_form_epr_axes(const std::vector<Axis>& axes);

/// Limit of `form.averaged` as kt -> infinity.
double asymptote(const ClosedForm& form);
double asymptote(const ChannelKind& channel, NoiseKind noise);

/// kt* where a.averaged - b.averaged changes sign, by bisection to an
/// interval narrower than `tolerance`. Throws ContractViolation when the
/// difference does not change sign on [lo, hi] or the endpoints already
/// agree within 1e-12.
double crossover(const ClosedForm& a, const ClosedForm& b,
                 std::pair<double, double> bracket, double tolerance = 1e-10);

}  // namespace nqt
