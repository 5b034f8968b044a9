#include "nqt/closed_form.hpp"

#include <cmath>
#include <limits>

#include "nqt/errors.hpp"

namespace nqt {

namespace {

// Squared Bloch-vector components of the input state.
struct Bloch2 {
  double x, y, z;
};

Bloch2 bloch2(double theta, double phi) {
  const double s2 = std::sin(theta) * std::sin(theta);
  const double c = std::cos(phi);
  return {s2 * c * c, s2 * (1 - c * c), std::cos(theta) * std::cos(theta)};
}

double ex(double rate, double kt) { return std::exp(-rate * kt); }

ClosedForm ghz_form(NoiseKind noise) {
  ClosedForm f{"ghz", noise_name(noise), {}, {}};
  switch (noise) {
    case NoiseKind::AxisX:
      f.pointwise = [](double th, double ph, double kt) {
        const Bloch2 n = bloch2(th, ph);
        return 0.5 * ((1 + n.x) + ex(4, kt) * (1 - n.x));
      };
      f.averaged = [](double kt) { return 2.0 / 3 + ex(4, kt) / 3; };
      break;
    case NoiseKind::AxisY:
      f.pointwise = [](double th, double ph, double kt) {
        const Bloch2 n = bloch2(th, ph);
        return 0.5 * (1 + n.y * ex(2, kt) + n.z * ex(4, kt) + n.x * ex(6, kt));
      };
      f.averaged = [](double kt) {
        return (3 + ex(2, kt) + ex(4, kt) + ex(6, kt)) / 6;
      };
      break;
    case NoiseKind::AxisZ:
      f.pointwise = [](double th, double, double kt) {
        const double s = std::sin(th);
        return 1 - 0.5 * (1 - ex(6, kt)) * s * s;
      };
      f.averaged = [](double kt) { return 2.0 / 3 + ex(6, kt) / 3; };
      break;
    case NoiseKind::Isotropic:
      f.pointwise = [](double th, double, double kt) {
        const double c = std::cos(th), s = std::sin(th);
        return 0.5 * (1 + c * c * ex(8, kt) + s * s * ex(12, kt));
      };
      f.averaged = [](double kt) {
        return (3 + ex(8, kt) + 2 * ex(12, kt)) / 6;
      };
      break;
  }
  return f;
}

ClosedForm w_form(NoiseKind noise) {
  ClosedForm f{"w", noise_name(noise), {}, {}};
  const auto single_axis_average = [](double kt) {
    return (14 + 3 * ex(2, kt) + 2 * ex(4, kt) + 5 * ex(6, kt)) / 24;
  };
  switch (noise) {
    case NoiseKind::AxisX:
      f.pointwise = [](double th, double ph, double kt) {
        const Bloch2 n = bloch2(th, ph);
        return ((4 + 2 * n.x) + ex(2, kt) * (n.z + 2 * n.x) +
                ex(4, kt) * (2 * n.y) + ex(6, kt) * (3 * n.z + 2 * n.y)) /
               8;
      };
      f.averaged = single_axis_average;
      break;
    case NoiseKind::AxisY:
      f.pointwise = [](double th, double ph, double kt) {
        const Bloch2 n = bloch2(th, ph);
        return ((4 + 2 * n.y) + ex(2, kt) * (n.z + 2 * n.y) +
                ex(4, kt) * (2 * n.x) + ex(6, kt) * (3 * n.z + 2 * n.x)) /
               8;
      };
      f.averaged = single_axis_average;
      break;
    case NoiseKind::AxisZ:
      f.pointwise = [](double th, double, double kt) {
        const double s = std::sin(th);
        return 1 - 0.25 * (1 - ex(4, kt)) * (1 + s * s);
      };
      f.averaged = [](double kt) { return (7 + 5 * ex(4, kt)) / 12; };
      break;
    case NoiseKind::Isotropic:
      f.pointwise = [](double th, double, double kt) {
        const double c = std::cos(th), s = std::sin(th);
        return 0.25 * (2 + s * s * ex(8, kt) + (1 + c * c) * ex(12, kt));
      };
      f.averaged = [](double kt) {
        return (3 + ex(8, kt) + 2 * ex(12, kt)) / 6;
      };
      break;
  }
  return f;
}

}  // namespace

ClosedForm closed_form_epr_axes(const std::vector<Axis>& axes) {
  require(axes.size() == 2, "EPR noise assignment needs exactly two axes");
  // Each unit-rate dephasing term along one axis shrinks the two transverse
  // Bloch components of the teleported state by e^{-2kt}.
  int exponent[3] = {0, 0, 0};
  for (Axis a : axes) {
    for (int k = 0; k < 3; ++k) {
      if (k != static_cast<int>(a)) exponent[k] += 2;
    }
  }
  const bool same = axes[0] == axes[1];
  ClosedForm f{"epr",
               same ? std::string(1, axis_name(axes[0]))
                    : std::string{axis_name(axes[0]), axis_name(axes[1])},
               {},
               {}};
  f.pointwise = [=](double th, double ph, double kt) {
    const Bloch2 n = bloch2(th, ph);
    return 0.5 * (1 + n.x * ex(exponent[0], kt) + n.y * ex(exponent[1], kt) +
                  n.z * ex(exponent[2], kt));
  };
  if (same) {
    f.averaged = [](double kt) { return 2.0 / 3 + ex(4, kt) / 3; };
  } else {
    f.averaged = [](double kt) {
      return (3 + 2 * ex(2, kt) + ex(4, kt)) / 6;
    };
  }
  return f;
}

ClosedForm closed_form(const ChannelKind& channel, NoiseKind noise) {
  if (std::holds_alternative<channel::GhzStd>(channel)) return ghz_form(noise);
  if (std::holds_alternative<channel::WStd>(channel)) return w_form(noise);
  if (std::holds_alternative<channel::Epr>(channel)) {
    switch (noise) {
      case NoiseKind::AxisX: return closed_form_epr_axes({Axis::X, Axis::X});
      case NoiseKind::AxisY: return closed_form_epr_axes({Axis::Y, Axis::Y});
      case NoiseKind::AxisZ: return closed_form_epr_axes({Axis::Z, Axis::Z});
      case NoiseKind::Isotropic: {
        ClosedForm f{"epr", "iso", {}, {}};
        f.pointwise = [](double, double, double kt) {
          return 0.5 + 0.5 * ex(8, kt);
        };
        f.averaged = [](double kt) { return 0.5 + 0.5 * ex(8, kt); };
        return f;
      }
    }
  }
  throw ContractViolation("closed_form: unsupported channel '" +
                          channel_name(channel) + "'");
}

double asymptote(const ClosedForm& form) {
  return form.averaged(std::numeric_limits<double>::infinity());
}

double asymptote(const ChannelKind& channel, NoiseKind noise) {
  return asymptote(closed_form(channel, noise));
}

double crossover(const ClosedForm& a, const ClosedForm& b,
                 std::pair<double, double> bracket, double tolerance) {
  auto [lo, hi] = bracket;
  require(lo < hi, "crossover: bracket must satisfy lo < hi");
  require(tolerance > 0, "crossover: tolerance must be positive");
  const auto diff = [&](double kt) { return a.averaged(kt) - b.averaged(kt); };
  double f_lo = diff(lo);
  const double f_hi = diff(hi);
  require(std::abs(f_lo) > 1e-12 || std::abs(f_hi) > 1e-12,
          "crossover: degenerate bracket, forms agree at both endpoints");
  require((f_lo < 0) != (f_hi < 0),
          "crossover: no sign change of " + a.channel + "-" + a.noise +
              " minus " + b.channel + "-" + b.noise + " on bracket");
  while (hi - lo >= tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = diff(mid);
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace nqt
