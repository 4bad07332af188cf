#include <catch_amalgamated.hpp>
#include <cmath>

#include "qcat/cusp_fock.hpp"
#include "qcat/finite_mu.hpp"

using namespace qcat;

TEST_CASE("Hamiltonian is exactly symmetric") {
  for (double A : {-1.0, 0.5, 2.0}) {
    auto H = build_cusp_fock_hamiltonian(A, 7.0, 14);
    Eigen::MatrixXd D(H);
    CHECK((D - D.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("A=1: quadratic couplings vanish, ground state near the vacuum") {
  // coefficients (A-1)/8 and (A-1)/4 are zero; only the 1/(64 mu) quartic
  // connects |0,0> to other states
  const double mu = 50.0;
  auto H = build_cusp_fock_hamiltonian(1.0, mu, 16);
  Eigen::MatrixXd D(H);
  // number-basis rows touching |0,0> via quadratic terms would be (2,0),
  // (0,2), (1,1); the quartic also reaches them, with 1/mu weight
  const int d = 17;
  CHECK(std::abs(D(2 * d + 0, 0)) < 0.5 / mu);
  CHECK(std::abs(D(0 * d + 2, 0)) < 0.5 / mu);
  auto gs = cusp_fock_ground_state(1.0, mu, 16);
  CHECK(std::abs(gs.amps(0, 0)) > 1.0 - 0.5 / mu);
  CHECK(gs.entropy_bits < 1e-3);
}

TEST_CASE("ground energy and entropy match the grid pipeline") {
  // total energy: grid collective mode + 1/2 from the spectator oscillator
  const double mu = 10.0;
  for (double A : {2.0, -1.0}) {
    const int nmax = A > 0 ? 36 : 44;
    auto fock = cusp_fock_ground_state(A, mu, nmax);
    auto p = make_cusp(mu, A);
    auto g = default_grid_for(p, 3072);
    auto grid = solve_1d_ground_state(p, g);
    CHECK(fock.energy == Catch::Approx(grid.energy + 0.5).margin(1e-4));
    const double s_grid = finite_mu_entropy(p);
    CHECK(fock.entropy_bits == Catch::Approx(s_grid).margin(1e-3));
  }
}

TEST_CASE("n_max guard") {
  CHECK_THROWS_AS(build_cusp_fock_hamiltonian(1.0, 1.0, 4), ContractError);
  // displaced wells at mu=12 need far more than 12 quanta
  CHECK_THROWS_AS(cusp_fock_ground_state(-2.0, 12.0, 12), TruncationError);
}
