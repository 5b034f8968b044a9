#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nqt/errors.hpp"
#include "nqt/lindblad.hpp"
#include "test_util.hpp"

using namespace nqt;

namespace {

DensityMatrix ghz() { return DensityMatrix::from_pure(make_channel(channel::GhzStd{})); }
DensityMatrix w() { return DensityMatrix::from_pure(make_channel(channel::WStd{})); }

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix local3(const ComplexMatrix& u) { return kron(kron(u, u), u); }

NoiseSpec random_spec(std::mt19937_64& rng, int n_qubits) {
  std::uniform_real_distribution<double> rate(0.0, 2.0);
  std::vector<LindbladTerm> terms;
  for (int q = 1; q <= n_qubits; ++q) {
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      if (rng() % 2) terms.push_back({q, a, rate(rng)});
    }
  }
  if (terms.empty()) terms.push_back({1, Axis::Z, 1.0});
  return NoiseSpec(terms);
}

}  // namespace

TEST_CASE("liouvillian of an empty spec is zero") {
  const ComplexMatrix l = liouvillian(NoiseSpec{}, 3);
  CHECK(l.rows() == 64);
  CHECK(l.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-qubit dephasing damps coherence at rate 2 kappa") {
  const double kappa = 0.37;
  const ComplexMatrix l = liouvillian(NoiseSpec({{1, Axis::Z, kappa}}), 1);
  ComplexMatrix e01 = ComplexMatrix::Zero(2, 2);
  e01(0, 1) = 1.0;
  CHECK((l * vec(e01) - (-2 * kappa) * vec(e01)).norm() < 1e-15);
  ComplexMatrix e00 = ComplexMatrix::Zero(2, 2);
  e00(0, 0) = 1.0;
  CHECK((l * vec(e00)).norm() < 1e-15);
}

TEST_CASE("GHZ coherence decays at 6 kappa under z noise") {
  const double kappa = 1.3;
  const ComplexMatrix l = liouvillian(NoiseSpec::from_kind(NoiseKind::AxisZ, kappa, 3), 3);
  const ComplexVector d = l * vec(ghz().matrix());
  const ComplexMatrix rate = Eigen::Map<const ComplexMatrix>(d.data(), 8, 8);
  CHECK(std::abs(rate(0, 7) - (-6 * kappa) * ghz()(0, 7)) < 1e-14);
  CHECK(std::abs(rate(7, 0) - (-6 * kappa) * ghz()(7, 0)) < 1e-14);
  CHECK(std::abs(rate(0, 0)) < 1e-15);
}

TEST_CASE("superoperator and dissipator agree") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const NoiseSpec spec = random_spec(rng, 3);
    const DensityMatrix rho = testing::random_density(rng, 3);
    const ComplexVector lv = liouvillian(spec, 3) * vec(rho.matrix());
    CHECK((lv - vec(dissipator(rho.matrix(), spec))).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("noise spec construction") {
  const NoiseSpec iso = NoiseSpec::from_kind(NoiseKind::Isotropic, 0.5, 3);
  CHECK(iso.terms().size() == 9);
  CHECK(iso.kappa_max() == 0.5);
  CHECK(NoiseSpec::from_kind(NoiseKind::AxisY, 1.0, 2).terms().size() == 2);
  const NoiseSpec axes = NoiseSpec::from_axes({Axis::X, Axis::Z}, 2.0);
  REQUIRE(axes.terms().size() == 2);
  CHECK(axes.terms()[1].qubit == 2);
  CHECK(axes.terms()[1].axis == Axis::Z);
  CHECK(NoiseSpec{}.empty());

  CHECK_THROWS_AS(NoiseSpec({{1, Axis::X, -0.1}}), ContractViolation);
  CHECK_THROWS_AS(NoiseSpec({{0, Axis::X, 0.1}}), ContractViolation);
  CHECK_THROWS_AS(NoiseSpec({{1, Axis::X, 0.1}, {1, Axis::X, 0.2}}), ContractViolation);
  CHECK_NOTHROW(NoiseSpec({{1, Axis::X, 0.1}, {1, Axis::Y, 0.2}}));
  CHECK_THROWS_AS(liouvillian(NoiseSpec({{4, Axis::Z, 1.0}}), 3), ContractViolation);
}

TEST_CASE("noise names round-trip") {
  for (NoiseKind k : kAllNoiseKinds) CHECK(parse_noise(noise_name(k)) == k);
  CHECK_FALSE(parse_noise("depolarizing").has_value());
}

TEST_CASE("evolve_expm at t = 0 returns the input") {
  const NoiseSpec spec = NoiseSpec::from_kind(NoiseKind::Isotropic, 1.0, 3);
  CHECK(max_abs_diff(evolve_expm(ghz(), spec, 0.0).matrix(), ghz().matrix()) == 0.0);
  CHECK(max_abs_diff(evolve_rk4(ghz(), spec, 0.0).matrix(), ghz().matrix()) == 0.0);
  CHECK_THROWS_AS(evolve_expm(ghz(), spec, -1.0), ContractViolation);
  CHECK_THROWS_AS(evolve_rk4(ghz(), spec, 1.0, 0), ContractViolation);
}

TEST_CASE("GHZ under z noise keeps only the corner entries") {
  const DensityMatrix rho =
      evolve_expm(ghz(), NoiseSpec::from_kind(NoiseKind::AxisZ, 1.0, 3), 0.2);
  ComplexMatrix expected = ComplexMatrix::Zero(8, 8);
  expected(0, 0) = expected(7, 7) = 0.5;
  expected(0, 7) = expected(7, 0) = std::exp(-1.2) / 2;
  CHECK(max_abs_diff(rho.matrix(), expected) < 1e-12);
}

TEST_CASE("W under z noise damps its coherences by exp(-4 kt)") {
  const DensityMatrix rho = evolve_expm(w(), NoiseSpec::from_kind(NoiseKind::AxisZ, 1.0, 3), 0.2);
  ComplexMatrix expected = w().matrix() * std::exp(-0.8);
  for (int i = 0; i < 8; ++i) expected(i, i) = w()(i, i);
  CHECK(max_abs_diff(rho.matrix(), expected) < 1e-12);
  CHECK(max_abs_diff(rho.matrix(), closed_channel(channel::WStd{}, NoiseKind::AxisZ, 0.2).matrix()) <
        1e-12);
}

TEST_CASE("RK4 reproduces the GHZ x-noise population") {
  const DensityMatrix rho =
      evolve_rk4(ghz(), NoiseSpec::from_kind(NoiseKind::AxisX, 1.0, 3), 0.5, 10000);
  CHECK(std::abs(rho(0, 0).real() - 0.17575073121372975) < 1e-9);
  CHECK(std::abs(rho(0, 0).real() - (1 + 3 * std::exp(-2.0)) / 8) < 1e-9);
}

TEST_CASE("RK4 converges at fourth order") {
  const NoiseSpec spec = NoiseSpec::from_kind(NoiseKind::Isotropic, 1.0, 3);
  const double t = 1.0;
  const int n = 200;
  const ComplexMatrix r1 = evolve_rk4(w(), spec, t, n).matrix();
  const ComplexMatrix r2 = evolve_rk4(w(), spec, t, 2 * n).matrix();
  const ComplexMatrix r4 = evolve_rk4(w(), spec, t, 4 * n).matrix();
  const double coarse = max_abs_diff(r1, r2);
  const double fine = max_abs_diff(r2, r4);
  const double ratio = coarse / fine;
  CAPTURE(ratio);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.02));
}

TEST_CASE("default RK4 step count") {
  CHECK(default_rk4_steps(NoiseSpec::from_kind(NoiseKind::AxisX, 1.0, 3), 2.0) == 1000);
  CHECK(default_rk4_steps(NoiseSpec::from_kind(NoiseKind::AxisX, 3.0, 3), 5.0) == 1500);
}

TEST_CASE("RK4 agrees with expm on every channel and noise kind") {
  for (const ChannelKind& ch : {ChannelKind{channel::GhzStd{}}, ChannelKind{channel::WStd{}}}) {
    const DensityMatrix rho0 = DensityMatrix::from_pure(make_channel(ch));
    for (NoiseKind k : kAllNoiseKinds) {
      const NoiseSpec spec = NoiseSpec::from_kind(k, 1.0, 3);
      for (double kt : {0.05, 0.5, 2.0}) {
        CHECK(max_abs_diff(evolve_rk4(rho0, spec, kt).matrix(),
                           evolve_expm(rho0, spec, kt).matrix()) < 1e-9);
      }
    }
  }
}

TEST_CASE("closed channel solutions match the propagator") {
  for (const ChannelKind& ch : {ChannelKind{channel::GhzStd{}}, ChannelKind{channel::WStd{}}}) {
    const DensityMatrix rho0 = DensityMatrix::from_pure(make_channel(ch));
    for (NoiseKind k : kAllNoiseKinds) {
      const NoiseSpec spec = NoiseSpec::from_kind(k, 1.0, 3);
      for (double kt : {0.05, 0.1, 0.5, 1.0, 2.0}) {
        CAPTURE(kt);
        CHECK(max_abs_diff(evolve_expm(rho0, spec, kt).matrix(),
                           closed_channel(ch, k, kt).matrix()) < 1e-10);
      }
    }
  }
}

TEST_CASE("closed channel examples") {
  CHECK(max_abs_diff(closed_channel(channel::GhzStd{}, NoiseKind::AxisX, 0.0).matrix(),
                     ghz().matrix()) < 1e-15);
  const DensityMatrix y = closed_channel(channel::GhzStd{}, NoiseKind::AxisY, 0.1);
  CHECK(std::abs(y(0, 7) - Complex((3 * std::exp(-0.2) + std::exp(-0.6)) / 8)) < 1e-15);
  const DensityMatrix late = closed_channel(channel::WStd{}, NoiseKind::Isotropic, 60.0);
  CHECK(max_abs_diff(late.matrix(), ComplexMatrix::Identity(8, 8) / 8.0) < 1e-15);
  CHECK_THROWS_AS(closed_channel(channel::Epr{}, NoiseKind::AxisZ, 0.1), ContractViolation);
  CHECK_THROWS_AS(closed_channel(channel::GhzStd{}, NoiseKind::AxisZ, -0.1), ContractViolation);
}

TEST_CASE("coherence equations for x and y noise") {
  const AppendixDiagnostics at_zero = appendix_check({0.0});
  CHECK(at_zero.x_ok());
  CHECK(at_zero.y_ok());
  CHECK(at_zero.boundary_distance > 0.1);
  CHECK(at_zero.conjugated_violates_boundary());

  const AppendixDiagnostics d = appendix_check({0.25, 0.5, 1.0});
  CHECK(d.x_residual < 1e-12);
  CHECK(d.y_residual < 1e-12);
  CHECK(d.conjugated_solves_y());
  CHECK(d.passed());
  CHECK_THROWS_AS(appendix_check({}), ContractViolation);
}

TEST_CASE("conjugation maps x-noise trajectories onto y-noise trajectories") {
  const ComplexMatrix u = x_to_y_rotation();
  CHECK(max_abs_diff(u * pauli::x() * u.adjoint(), pauli::y()) < 1e-15);
  const ComplexMatrix u3 = local3(u);
  const NoiseSpec xs = NoiseSpec::from_kind(NoiseKind::AxisX, 1.0, 3);
  const NoiseSpec ys = NoiseSpec::from_kind(NoiseKind::AxisY, 1.0, 3);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho0 = testing::random_density(rng, 3);
    const DensityMatrix rho0_conj(u3 * rho0.matrix() * u3.adjoint());
    for (double kt : {0.1, 0.7, 2.5}) {
      const ComplexMatrix lhs = u3 * evolve_expm(rho0, xs, kt).matrix() * u3.adjoint();
      CHECK(max_abs_diff(lhs, evolve_expm(rho0_conj, ys, kt).matrix()) < 1e-10);
    }
  }
}

TEST_CASE("evolution preserves density-matrix structure") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const NoiseSpec spec = random_spec(rng, 3);
    const DensityMatrix rho0 = testing::random_density(rng, 3);
    for (double frac : {0.0, 0.3, 1.0, 2.2, 5.0}) {
      const double t = frac / spec.kappa_max();
      const ComplexMatrix m = evolve_expm(rho0, spec, t).matrix();
      CHECK(std::abs(m.trace() - Complex(1.0)) < 1e-12);
      CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(min_hermitian_eigenvalue(m) >= -1e-10);
    }
  }
}

TEST_CASE("semigroup property") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const NoiseSpec spec = random_spec(rng, 3);
    const DensityMatrix rho0 = testing::random_density(rng, 3);
    const double t1 = 0.3 + 0.1 * trial, t2 = 1.1;
    const DensityMatrix two_step = evolve_expm(evolve_expm(rho0, spec, t1), spec, t2);
    CHECK(max_abs_diff(two_step.matrix(), evolve_expm(rho0, spec, t1 + t2).matrix()) < 1e-11);
  }
}

TEST_CASE("maximally mixed state is stationary") {
  std::mt19937_64 rng(2);
  const ComplexMatrix mixed = ComplexMatrix::Identity(8, 8) / 8.0;
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexVector r = liouvillian(random_spec(rng, 3), 3) * vec(mixed);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-13);
  }
  for (NoiseKind k : kAllNoiseKinds) {
    const ComplexVector r = liouvillian(NoiseSpec::from_kind(k, 1.0, 3), 3) * vec(mixed);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-13);
  }
}
