#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"

#include "eubsim/dynamics.hpp"
#include "eubsim/errors.hpp"

using namespace eubsim;

namespace {

BellDiagonalState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    BellDiagonalState s{u(rng), u(rng), u(rng)};
    const auto w = s.bell_weights();
    if (*std::min_element(w.begin(), w.end()) >= 0.0) return s;
  }
}

}  // namespace

TEST_CASE("state validation") {
  CHECK_NOTHROW(BellDiagonalState::phi_plus().validate());
  CHECK_NOTHROW(BellDiagonalState::psi_plus().validate());
  CHECK_NOTHROW((BellDiagonalState{1.0, -0.2, 0.2}.validate()));
  CHECK_THROWS_AS((BellDiagonalState{1.0, 1.0, 1.0}.validate()), InvalidState);
  CHECK_THROWS_AS((evolve_state({0.9, 0.9, 0.9}, {})), InvalidState);
  CHECK_NOTHROW((BellDiagonalState{1.0, -1.0, 1.0 + 5e-13}.validate()));
}

TEST_CASE("evolve_state") {
  auto x = evolve_state(BellDiagonalState::phi_plus(), {0.0, 0.8, 0.9});
  CHECK(x.gamma_c == doctest::Approx(1.6));
  CHECK(x.omega_c == 0.0);
  CHECK(x.d1 == 0.5);
  CHECK(x.d2 == 0.0);
  CHECK(x.d3 == 0.0);
  CHECK(x.d4 == 0.5);

  x = evolve_state({1.0, -0.2, 0.2}, {0.0, 1.0, 1.0});
  CHECK(x.gamma_c == doctest::Approx(1.2));
  CHECK(x.omega_c == doctest::Approx(0.8));
  CHECK(x.d1 == doctest::Approx(0.3));
  CHECK(x.d2 == doctest::Approx(0.2));
  CHECK(x.d3 == doctest::Approx(0.2));
  CHECK(x.d4 == doctest::Approx(0.3));

  x = evolve_state(BellDiagonalState::maximally_mixed(), {0.0, 0.37, 0.11});
  CHECK(x.gamma_c == 0.0);
  CHECK(x.omega_c == 0.0);
  CHECK(x.d1 == 0.25);
}

TEST_CASE("as_matrix layout") {
  const Eigen::Matrix4cd mixed = as_matrix(evolve_state(BellDiagonalState::maximally_mixed(), {}));
  CHECK((mixed - Eigen::Matrix4cd::Identity() / 4.0).norm() == 0.0);

  const Eigen::Matrix4cd phi = as_matrix(evolve_state(BellDiagonalState::phi_plus(), {}));
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  CHECK((phi - expected).norm() == 0.0);

  const Eigen::Matrix4cd m = as_matrix(evolve_state({1.0, -0.2, 0.2}, {}));
  CHECK(m(0, 0).real() == doctest::Approx(0.3));
  CHECK(m(1, 1).real() == doctest::Approx(0.2));
  CHECK(m(0, 3).real() == doctest::Approx(0.3));
  CHECK(m(3, 0).real() == doctest::Approx(0.3));
  CHECK(m(1, 2).real() == doctest::Approx(0.2));
  CHECK(m(2, 1).real() == doctest::Approx(0.2));
}

TEST_CASE("eigenvalues_xstate") {
  auto ev = eigenvalues_xstate(evolve_state(BellDiagonalState::phi_plus(), {}));
  std::sort(ev.begin(), ev.end());
  CHECK(ev[3] == 1.0);
  CHECK(ev[0] == 0.0);
  CHECK(ev[1] == 0.0);
  CHECK(ev[2] == 0.0);

  for (double v : eigenvalues_xstate(XState{})) CHECK(v == 0.25);

  ev = eigenvalues_xstate(evolve_state({1.0, -0.2, 0.2}, {}));
  CHECK(ev[0] == doctest::Approx(0.6));
  CHECK(ev[1] == doctest::Approx(0.0));
  CHECK(ev[2] == doctest::Approx(0.4));
  CHECK(ev[3] == doctest::Approx(0.0));
}

TEST_CASE("property: evolved X states match the dense eigensolver and stay positive") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const BellDiagonalState s = random_state(rng);
    const XState x = evolve_state(s, {0.0, unit(rng), unit(rng)});
    const Eigen::Matrix4cd m = as_matrix(x);

    CHECK((m - m.adjoint()).norm() == 0.0);
    CHECK(std::abs(m.trace().real() - 1.0) <= 1e-12);
    for (auto [r, c] : {std::pair{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}) {
      CHECK(m(r, c) == std::complex<double>(0.0, 0.0));
    }

    auto block = eigenvalues_xstate(x);
    std::sort(block.begin(), block.end());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
    const Eigen::Vector4d dense = solver.eigenvalues();
    for (int k = 0; k < 4; ++k) {
      CHECK(block[static_cast<std::size_t>(k)] >= -1e-12);
      CHECK(std::abs(block[static_cast<std::size_t>(k)] - dense[k]) <= 1e-10);
    }
    CHECK(std::abs(std::accumulate(block.begin(), block.end(), 0.0) - 1.0) <= 1e-12);
  }
}

TEST_CASE("full coherence reproduces the Pauli-built initial state") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const BellDiagonalState s = random_state(rng);
    const Eigen::Matrix4cd evolved = as_matrix(evolve_state(s, {0.0, 1.0, 1.0}));
    CHECK((evolved - bloch_matrix(s)).cwiseAbs().maxCoeff() <= 1e-15);
  }
}
