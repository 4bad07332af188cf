#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "qcat/solver_1d.hpp"

using namespace qcat;

TEST_CASE("harmonic ground state") {
  auto g = make_symmetric_grid(8.0, 4096);
  auto r = solve_1d_ground_state([](double y) { return 0.5 * y * y; }, g);
  CHECK(r.energy == Catch::Approx(0.5).margin(1e-6));
  CHECK(r.energy_gap == Catch::Approx(1.0).margin(1e-4));
  // Gaussian profile
  const double dy = g.spacing();
  for (int i : {1000, 2048, 3000}) {
    const double y = g.point(i);
    const double expect = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
    CHECK(r.psi[i] == Catch::Approx(expect).margin(1e-5));
  }
  // normalization with quadrature weight
  CHECK(r.psi.squaredNorm() * dy == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cusp single well energy and grid-refinement oracle") {
  auto p = make_cusp(10.0, 2.0);
  auto g1 = default_grid_for(p, 1024);
  auto g2 = make_symmetric_grid(g1.y_max, 2048);
  const double e1 = solve_1d_ground_state(p, g1).energy;
  const double e2 = solve_1d_ground_state(p, g2).energy;
  // doubled resolution moves the eigenvalue by the discretization error only
  CHECK(e1 == Catch::Approx(e2).margin(5e-5));
  // mu -> infinity value is eps/2 with eps = sqrt(2); corrections O(1/mu)
  CHECK(e2 == Catch::Approx(std::sqrt(2.0) / 2 + 0.0094).margin(2e-3));
}

TEST_CASE("cusp double well: even parity, two lobes") {
  auto p = make_cusp(40.0, -1.0);
  auto g = default_grid_for(p, 2048);
  auto r = solve_1d_ground_state(p, g);
  const int n = g.n_points;
  // even parity
  for (int i = 0; i < n; i += 97)
    CHECK(r.psi[i] == Catch::Approx(r.psi[n - 1 - i]).margin(1e-10));
  // lobes near +-sqrt(40)
  const double d = std::sqrt(40.0);
  int imax = 0;
  for (int i = n / 2; i < n; ++i)
    if (r.psi[i] > r.psi[imax]) imax = i;
  CHECK(std::abs(g.point(imax) - d) < 0.1);
  // <y> = 0
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += g.point(i) * r.psi[i] * r.psi[i];
  CHECK(std::abs(mean * g.spacing()) < 1e-8);
  // quasi-degenerate pair
  CHECK(r.energy_gap < 1e-8);
}

TEST_CASE("domain too small raises") {
  auto p = make_cusp(40.0, -1.0);  // wells at +-6.32
  auto g = make_symmetric_grid(7.0, 512);
  CHECK_THROWS_AS(solve_1d_ground_state(p, g), DomainTooSmallError);
}

TEST_CASE("grid contract") {
  CHECK_THROWS_AS(make_symmetric_grid(5.0, 32), ContractError);
  CHECK_THROWS_AS(Grid1D(2.0, 1.0, 128), ContractError);
}
