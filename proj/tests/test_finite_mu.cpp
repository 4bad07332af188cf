#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "qcat/cusp_fock.hpp"
#include "qcat/finite_mu.hpp"
#include "qcat/lobes.hpp"

using namespace qcat;

namespace {

// harmonic collective mode of frequency eps: the Gaussian analysis is exact
// at any mu, so the numeric pipeline must match entropy_from_ratio
double harmonic_pipeline_entropy(double eps, double theta = std::numbers::pi / 2) {
  auto g = make_symmetric_grid(9.0 / std::sqrt(std::min(eps, 1.0)), 3072);
  auto r = solve_1d_ground_state([eps](double y) { return 0.5 * eps * eps * y * y; }, g);
  auto c = fock_coefficients(r.psi, g, 80);
  auto st = beam_splitter_rotate(c, theta);
  return von_neumann_entropy(reduced_density_matrix(st, 2));
}

}  // namespace

TEST_CASE("harmonic end-to-end matches the Gaussian formula") {
  for (double eps : {0.5, 2.0, 4.0}) {
    const double analytic = entropy_from_ratio(
        ratio_general_theta(eps, std::numbers::pi / 2));
    CHECK(harmonic_pipeline_entropy(eps) ==
          Catch::Approx(analytic).margin(1e-4));
  }
}

TEST_CASE("harmonic end-to-end at other mixing angles") {
  for (double theta : {0.7, 1.9}) {
    const double analytic = entropy_from_ratio(ratio_general_theta(3.0, theta));
    CHECK(harmonic_pipeline_entropy(3.0, theta) ==
          Catch::Approx(analytic).margin(1e-4));
  }
}

TEST_CASE("cusp at A=1 disentangles as mu grows") {
  double prev = 1.0;
  for (double mu : {2.0, 8.0, 32.0}) {
    const double s = finite_mu_entropy(make_cusp(mu, 1.0));
    CHECK(s < prev);
    prev = s;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("refinement history converges") {
  auto r = finite_mu_entropy_detailed(make_cusp(10.0, -1.0));
  REQUIRE(r.history.size() >= 2);
  const auto n = r.history.size();
  CHECK(std::abs(r.history[n - 1] - r.history[n - 2]) < 1e-4);
  // frozen discretization reproduces the converged value
  FiniteMuOptions opts;
  opts.fixed = r.used;
  CHECK(finite_mu_entropy(make_cusp(10.0, -1.0), opts) ==
        Catch::Approx(r.entropy_bits).margin(1e-12));
}

TEST_CASE("grid and Fock pipelines agree across the cusp") {
  // the mu=10 pair is covered in test_cusp_fock; keep the cheap mu=5 cases
  for (double A : {-2.0, -1.0, 1.0, 2.0}) {
    const double s_grid = finite_mu_entropy(make_cusp(5.0, A));
    const int nmax = A < 0 ? 44 : 30;
    const double s_fock = cusp_fock_ground_state(A, 5.0, nmax).entropy_bits;
    CHECK(s_grid == Catch::Approx(s_fock).margin(1e-3));
  }
}

TEST_CASE("molar finite-mu entropy near the plateau") {
  FiniteMuOptions opts;
  opts.tol = 2e-3;  // 2D refinement at the test budget
  const double s = finite_mu_entropy(make_molar(30.0, -1.0, 2.0), opts);
  CHECK(s == Catch::Approx(1.0).margin(0.1));
}

TEST_CASE("butterfly finite-mu rises toward the triple-point value") {
  // mu=20: the entropy climbs toward ~1.7 just below the crossing and
  // collapses above it.  At the crossing itself the value is hypersensitive
  // to the discretization, so the near-crossing points reuse the frozen
  // discretization of the plateau solve.
  const double A4 = -4.0 / std::sqrt(3.0);
  auto plateau = finite_mu_entropy_detailed(make_butterfly(20.0, 0.9, A4));
  FiniteMuOptions frozen;
  frozen.fixed = plateau.used;
  double s_spike = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double a2 = 0.969 + 0.004 * i / 20.0;
    s_spike = std::max(
        s_spike, finite_mu_entropy(make_butterfly(20.0, a2, A4), frozen));
  }
  const double s_above = finite_mu_entropy(make_butterfly(20.0, 1.05, A4));
  CHECK(plateau.entropy_bits > 1.1);
  CHECK(s_spike > plateau.entropy_bits);
  CHECK(s_above < 0.05);
}
