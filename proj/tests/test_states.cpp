#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nqt/errors.hpp"
#include "nqt/states.hpp"
#include "test_util.hpp"

using namespace nqt;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexVector ket(std::initializer_list<Complex> amps) {
  ComplexVector v(amps.size());
  int i = 0;
  for (Complex a : amps) v[i++] = a;
  return v;
}

// Overlap up to a global phase.
double phase_free_distance(const ComplexVector& a, const ComplexVector& b) {
  return 1.0 - std::abs(a.dot(b));
}

ComplexMatrix local_unitary(std::mt19937_64& rng, int n_qubits) {
  ComplexMatrix u = testing::random_unitary(rng, 2);
  for (int q = 1; q < n_qubits; ++q) u = kron(u, testing::random_unitary(rng, 2));
  return u;
}

}  // namespace

TEST_CASE("bloch_state poles and equator") {
  const StateVector north = bloch_state({0.0, 0.0});
  CHECK(std::abs(north[0] - Complex(1.0)) < 1e-15);
  CHECK(std::abs(north[1]) < 1e-15);

  const StateVector south = bloch_state({M_PI, 0.0});
  CHECK(phase_free_distance(south.amplitudes(), ket({0.0, 1.0})) < 1e-15);

  const StateVector eq = bloch_state({M_PI / 2, M_PI / 2});
  const Complex w = std::polar(1.0, M_PI / 4) * kInvSqrt2;
  CHECK(std::abs(eq[0] - w) < 1e-15);
  CHECK(std::abs(eq[1] - std::conj(w)) < 1e-15);
}

TEST_CASE("bloch_state rejects out-of-range angles") {
  CHECK_THROWS_AS(bloch_state({-0.1, 0.0}), ContractViolation);
  CHECK_THROWS_AS(bloch_state({M_PI + 1e-9, 0.0}), ContractViolation);
  CHECK_THROWS_AS(bloch_state({1.0, 2 * M_PI}), ContractViolation);
  CHECK_THROWS_AS(bloch_state({1.0, -1e-12}), ContractViolation);
  CHECK_THROWS_AS(bloch_state({std::nan(""), 0.0}), ContractViolation);
}

TEST_CASE("standard channel amplitudes") {
  const StateVector epr = make_channel(channel::Epr{});
  CHECK(epr.n_qubits() == 2);
  CHECK(epr[0].real() == doctest::Approx(kInvSqrt2));
  CHECK(epr[3].real() == doctest::Approx(kInvSqrt2));

  const StateVector ghz = make_channel(channel::GhzStd{});
  for (int i = 0; i < 8; ++i) {
    const double expected = (i == 0 || i == 7) ? kInvSqrt2 : 0.0;
    CHECK(std::abs(ghz[i] - Complex(expected)) < 1e-15);
  }

  const StateVector w = make_channel(channel::WStd{});
  for (int i = 0; i < 8; ++i) {
    const double expected = i == 1 ? std::sqrt(2.0) / 2 : (i == 2 || i == 4) ? 0.5 : 0.0;
    CHECK(std::abs(w[i] - Complex(expected)) < 1e-15);
  }
}

TEST_CASE("general channels and their normalization contract") {
  const StateVector g = make_channel(channel::GhzGeneral{Complex(0.6), Complex(0.0, 0.8)});
  CHECK(g[0] == Complex(0.6));
  CHECK(g[7] == Complex(0.0, 0.8));
  const StateVector w = make_channel(channel::WGeneral{0.6, 0.0, 0.8});
  CHECK(w[1] == Complex(0.6));  // a|001>
  CHECK(w[4] == Complex(0.8));  // c|100>
  CHECK_THROWS_AS(make_channel(channel::GhzGeneral{1.0, 1.0}), ContractViolation);
  CHECK_THROWS_AS(make_channel(channel::WGeneral{0.5, 0.5, 0.5}), ContractViolation);
  CHECK_THROWS_AS(make_channel(channel::PsiTilde{ket({1.0, 1.0}), ket({1.0, 0.0})}),
                  ContractViolation);
  CHECK_THROWS_AS(make_channel(channel::PsiTilde{ket({1.0, 0.0, 0.0}), ket({1.0, 0.0})}),
                  ContractViolation);
}

TEST_CASE("psi tilde with q1 = |0>, q2 = |1> is the GHZ state") {
  const StateVector t = make_channel(channel::PsiTilde{ket({1.0, 0.0}), ket({0.0, 1.0})});
  const StateVector g = make_channel(channel::GhzStd{});
  CHECK((t.amplitudes() - g.amplitudes()).norm() < 1e-15);
}

TEST_CASE("every channel constructor yields a unit vector") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVector abc = testing::random_unit_vector(rng, 3);
    const ComplexVector ab = testing::random_unit_vector(rng, 2);
    for (const ChannelKind& kind :
         {ChannelKind{channel::GhzGeneral{ab[0], ab[1]}},
          ChannelKind{channel::WGeneral{abc[0], abc[1], abc[2]}},
          ChannelKind{channel::PsiTilde{testing::random_unit_vector(rng, 2),
                                        testing::random_unit_vector(rng, 2)}}}) {
      CHECK(std::abs(make_channel(kind).amplitudes().norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("channel names") {
  CHECK(channel_name(channel::Epr{}) == "epr");
  CHECK(channel_name(channel::GhzStd{}) == "ghz");
  CHECK(channel_name(channel::WStd{}) == "w");
}

TEST_CASE("groverian of product states vanishes") {
  ComplexVector v = ComplexVector::Zero(8);
  v[2] = 1.0;  // |010>
  CHECK(groverian_pure(StateVector(v)) < 1e-8);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexVector p =
        kron(kron(testing::random_unit_vector(rng, 2), testing::random_unit_vector(rng, 2)),
             testing::random_unit_vector(rng, 2));
    CHECK(groverian_pure(StateVector(p)) < 1e-8);
  }
}

TEST_CASE("groverian of the channel states is 1/sqrt2") {
  CHECK(std::abs(groverian_pure(make_channel(channel::GhzStd{})) - kInvSqrt2) < 1e-6);
  CHECK(std::abs(groverian_pure(make_channel(channel::WStd{})) - kInvSqrt2) < 1e-6);
  CHECK(std::abs(groverian_pure(make_channel(channel::Epr{})) - kInvSqrt2) < 1e-6);

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const channel::PsiTilde tilde{testing::random_unit_vector(rng, 2),
                                  testing::random_unit_vector(rng, 2)};
    CHECK(std::abs(groverian_pure(make_channel(tilde)) - kInvSqrt2) < 1e-6);
  }
}

TEST_CASE("groverian is invariant under local unitaries") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector psi(testing::random_unit_vector(rng, 8));
    const double g0 = groverian_pure(psi);
    const StateVector rotated(local_unitary(rng, 3) * psi.amplitudes());
    CHECK(std::abs(groverian_pure(rotated) - g0) < 1e-8);
  }
  const StateVector ghz = make_channel(channel::GhzStd{});
  const StateVector ghz_rot(local_unitary(rng, 3) * ghz.amplitudes());
  CHECK(std::abs(groverian_pure(ghz_rot) - groverian_pure(ghz)) < 1e-8);
}

TEST_CASE("groverian is reproducible for a fixed seed") {
  std::mt19937_64 rng(6);
  const StateVector psi(testing::random_unit_vector(rng, 8));
  GroverianOptions a, b;
  a.seed = b.seed = 17;
  CHECK(groverian_pure(psi, a) == groverian_pure(psi, b));
}

TEST_CASE("groverian contract") {
  CHECK_THROWS_AS(groverian_pure(bloch_state({0.3, 0.1})), ContractViolation);
  GroverianOptions none;
  none.starts = 0;
  CHECK_THROWS_AS(groverian_pure(make_channel(channel::GhzStd{}), none), ContractViolation);
}
