#include "nqt/lindblad.hpp"

#include <algorithm>
#include <cmath>

#include "nqt/errors.hpp"

namespace nqt {

namespace {

struct Coherences {
  double s07, s16, s25, s34;
};

Coherences coherences(const ComplexMatrix& m) {
  // Every entry is real; the imaginary parts are exactly zero by construction.
  return {m(0, 7).real(), m(1, 6).real(), m(2, 5).real(), m(3, 4).real()};
}

// Residual of  d s / dt = -(3 s_self + sign * (sum of the three partners)),
// kappa = 1. sign = -1 for x noise, +1 for y noise. sigma is real symmetric,
// so s43 == s34, s52 == s25, s61 == s16, s70 == s07.
double group_residual(const Coherences& s, const Coherences& ds, double sign) {
  const double r07 = ds.s07 + (3 * s.s07 + sign * (s.s16 + s.s25 + s.s34));
  const double r16 = ds.s16 + (3 * s.s16 + sign * (s.s07 + s.s34 + s.s25));
  const double r25 = ds.s25 + (3 * s.s25 + sign * (s.s07 + s.s34 + s.s16));
  const double r34 = ds.s34 + (3 * s.s34 + sign * (s.s16 + s.s25 + s.s07));
  return std::max({std::abs(r07), std::abs(r16), std::abs(r25), std::abs(r34)});
}

ComplexMatrix kron3(const ComplexMatrix& u) { return kron(kron(u, u), u); }

}  // namespace

AppendixDiagnostics appendix_check(const std::vector<double>& kt_grid) {
  require(!kt_grid.empty(), "appendix_check: empty grid");
  const ChannelKind ghz = channel::GhzStd{};
  const ComplexMatrix rho_ghz = make_channel(ghz).projector();
  const ComplexMatrix u3 = kron3(x_to_y_rotation());
  const NoiseSpec y_noise = NoiseSpec::from_kind(NoiseKind::AxisY, 1.0, 3);

  // The x-noise closed form is affine in E = e^{-4 kt}:
  //   sigma_x(kt) = sigma_x(inf) + E (sigma_x(0) - sigma_x(inf)),
  // so d sigma_x / dt = -4 E (sigma_x(0) - sigma_x(inf)).
  const ComplexMatrix x_at_zero = closed_channel(ghz, NoiseKind::AxisX, 0.0).matrix();
  const ComplexMatrix x_at_inf = closed_channel(ghz, NoiseKind::AxisX, 1e4).matrix();

  AppendixDiagnostics d;
  for (double kt : kt_grid) {
    require(kt >= 0.0, "appendix_check: kt must be >= 0");
    const double e2 = std::exp(-2 * kt), e4 = std::exp(-4 * kt),
                 e6 = std::exp(-6 * kt);

    const ComplexMatrix sx = closed_channel(ghz, NoiseKind::AxisX, kt).matrix();
    const Coherences cx = coherences(sx);
    const double d_ap = -12 * e4 / 8, d_am = 4 * e4 / 8;
    d.x_residual = std::max(
        d.x_residual, group_residual(cx, {d_ap, d_am, d_am, d_am}, -1.0));

    const Coherences cy =
        coherences(closed_channel(ghz, NoiseKind::AxisY, kt).matrix());
    const double d_b1 = (-6 * e2 - 6 * e6) / 8;
    const double d_neg_b2 = (2 * e2 - 6 * e6) / 8;
    d.y_residual = std::max(
        d.y_residual,
        group_residual(cy, {d_b1, d_neg_b2, d_neg_b2, d_neg_b2}, +1.0));

    const ComplexMatrix dsx = -4 * e4 * (x_at_zero - x_at_inf);
    const ComplexMatrix conj = u3 * sx * u3.adjoint();
    const ComplexMatrix d_conj = u3 * dsx * u3.adjoint();
    d.conjugated_residual = std::max(
        d.conjugated_residual,
        (d_conj - dissipator(conj, y_noise)).cwiseAbs().maxCoeff());
  }
  d.boundary_distance =
      (u3 * x_at_zero * u3.adjoint() - rho_ghz).cwiseAbs().maxCoeff();
  return d;
}

}  // namespace nqt
