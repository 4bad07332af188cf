#include <algorithm>
#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "qcat/fixed_points.hpp"

using namespace qcat;

namespace {

int count_stable(const std::vector<FixedPoint>& fps) {
  return static_cast<int>(
      std::count_if(fps.begin(), fps.end(), [](auto& f) { return f.stable(); }));
}

// finite-difference gradient norm at the point, relative to the theory scale
double fd_gradient_norm(const CatastrophePotential& p, const FixedPoint& fp) {
  const double h = 1e-6;
  double norm2 = 0.0;
  for (int k = 0; k < fp.dim; ++k) {
    auto up = fp.location, dn = fp.location;
    up[k] += h;
    dn[k] -= h;
    const double g =
        (eval_potential(p, std::span<const double>(up.data(), fp.dim)) -
         eval_potential(p, std::span<const double>(dn.data(), fp.dim))) /
        (2 * h);
    norm2 += g * g;
  }
  return std::sqrt(norm2);
}

}  // namespace

TEST_CASE("cusp fixed points A=-1, mu=4") {
  auto fps = find_fixed_points(make_cusp(4.0, -1.0));
  REQUIRE(fps.size() == 3);
  std::vector<double> stable_locs;
  for (auto& fp : fps) {
    if (fp.stable())
      stable_locs.push_back(fp.location[0]);
    else
      CHECK(std::abs(fp.location[0]) < 1e-12);
  }
  REQUIRE(stable_locs.size() == 2);
  std::sort(stable_locs.begin(), stable_locs.end());
  CHECK(stable_locs[0] == Catch::Approx(-2.0).epsilon(1e-12));
  CHECK(stable_locs[1] == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("cusp stable-point count flips at A=0") {
  CHECK(count_stable(find_fixed_points(make_cusp(2.0, 0.5))) == 1);
  CHECK(count_stable(find_fixed_points(make_cusp(2.0, 1e-9))) == 1);
  auto below = find_fixed_points(make_cusp(2.0, -1e-9));
  CHECK(count_stable(below) == 2);
  CHECK(below.size() == 3);
}

TEST_CASE("cusp at A=0 has a single marginal point") {
  auto fps = find_fixed_points(make_cusp(2.0, 0.0));
  REQUIRE(fps.size() == 1);
  CHECK(fps[0].marginal());
  CHECK_THROWS_AS(excitation_energies(make_cusp(2.0, 0.0), fps[0]),
                  MarginalPointError);
}

TEST_CASE("butterfly three regions at A4=-4/sqrt(3)") {
  const double A4 = -4.0 / std::sqrt(3.0);
  CHECK(count_stable(find_fixed_points(make_butterfly(1.0, -0.5, A4))) == 2);
  CHECK(count_stable(find_fixed_points(make_butterfly(1.0, 0.5, A4))) == 3);
  CHECK(count_stable(find_fixed_points(make_butterfly(1.0, 4.0 / 3 + 0.01, A4))) == 1);

  // displaced location for A2 = 1/2:  y+^2 = mu (2 + sqrt(4 - 3 A2)) / sqrt(3)
  auto fps = find_fixed_points(make_butterfly(1.0, 0.5, A4));
  const double expect = std::sqrt((2.0 + std::sqrt(2.5)) / std::sqrt(3.0));
  double got = 0.0;
  for (auto& fp : fps)
    if (fp.stable()) got = std::max(got, fp.location[0]);
  CHECK(got == Catch::Approx(expect).epsilon(1e-12));
}

TEST_CASE("butterfly well degeneracy exactly at A2=1") {
  const double A4 = -4.0 / std::sqrt(3.0);
  auto fps = find_fixed_points(make_butterfly(3.0, 1.0, A4));
  REQUIRE(count_stable(fps) == 3);
  for (auto& fp : fps)
    if (fp.stable()) CHECK(std::abs(fp.well_energy) < 1e-12);
  // slightly above: displaced wells lie higher than the origin
  auto above = find_fixed_points(make_butterfly(3.0, 1.0 + 1e-3, A4));
  double vdisp = 0, vorig = 1;
  for (auto& fp : above)
    if (fp.stable()) {
      if (std::abs(fp.location[0]) > 1e-6)
        vdisp = fp.well_energy;
      else
        vorig = fp.well_energy;
    }
  CHECK(vdisp > vorig);
}

TEST_CASE("molar fixed points") {
  auto fps = find_fixed_points(make_molar(9.0, -1.0, 2.0));
  CHECK(count_stable(fps) == 4);
  int on_axis = 0;
  for (auto& fp : fps)
    if (fp.stable()) {
      const bool axis = std::abs(fp.location[0]) < 1e-9 ||
                        std::abs(fp.location[1]) < 1e-9;
      CHECK(axis);
      const double r = std::hypot(fp.location[0], fp.location[1]);
      CHECK(r == Catch::Approx(3.0).epsilon(1e-12));
      ++on_axis;
    }
  CHECK(on_axis == 4);
  // origin unstable
  for (auto& fp : fps)
    if (std::hypot(fp.location[0], fp.location[1]) < 1e-9)
      CHECK(fp.stability == Stability::Unstable);

  // gamma < 1: diagonal wells
  auto diag = find_fixed_points(make_molar(9.0, -1.0, 0.5));
  CHECK(count_stable(diag) == 4);
  for (auto& fp : diag)
    if (fp.stable()) {
      CHECK(std::abs(std::abs(fp.location[0]) - std::abs(fp.location[1])) < 1e-9);
      CHECK(std::abs(fp.location[0]) ==
            Catch::Approx(std::sqrt(9.0 / 1.5)).epsilon(1e-12));
      CHECK(fp.normal_mode_angle ==
            Catch::Approx(std::numbers::pi / 4).margin(1e-12));
    }
}

TEST_CASE("excitation energies from the Hessian") {
  // molar axis lobe at gamma=3: both eigenvalues 2
  auto p = make_molar(4.0, -1.0, 3.0);
  for (auto& fp : find_fixed_points(p))
    if (fp.stable()) {
      auto eps = excitation_energies(p, fp);
      CHECK(eps[0] == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
      CHECK(eps[1] == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }

  // butterfly at A2=1: epsilon = 1 (origin), 2 (displaced wells)
  const double A4 = -4.0 / std::sqrt(3.0);
  auto b = make_butterfly(1.0, 1.0, A4);
  for (auto& fp : find_fixed_points(b))
    if (fp.stable()) {
      const double eps = excitation_energies(b, fp)[0];
      if (std::abs(fp.location[0]) < 1e-9)
        CHECK(eps == Catch::Approx(1.0).epsilon(1e-12));
      else
        CHECK(eps == Catch::Approx(2.0).epsilon(1e-10));
    }

  // cusp displaced wells: V'' = 2|A| (the Hessian value, not the in-text
  // shortcut); finite-difference oracle
  auto c = make_cusp(1.0, -1.0);
  for (auto& fp : find_fixed_points(c))
    if (fp.stable()) {
      const double eps = excitation_energies(c, fp)[0];
      CHECK(eps == Catch::Approx(std::sqrt(2.0)).epsilon(1e-10));
      const double h = 1e-4, y = fp.location[0];
      const double vpp = (eval_potential(c, y + h) - 2 * eval_potential(c, y) +
                          eval_potential(c, y - h)) /
                         (h * h);
      CHECK(eps * eps == Catch::Approx(vpp).margin(1e-6));
    }
  // unstable point refuses
  for (auto& fp : find_fixed_points(c))
    if (!fp.stable()) CHECK_THROWS_AS(excitation_energies(c, fp), UnstablePointError);
}

TEST_CASE("gradient residual invariant") {
  std::vector<CatastrophePotential> ps = {
      make_cusp(7.0, -0.8), make_cusp(70.0, 2.0),
      make_butterfly(11.0, 0.9, -4.0 / std::sqrt(3.0)),
      make_butterfly(5.0, -1.2, 0.7), make_molar(33.0, -1.0, 1.7),
      make_molar(21.0, -1.0, 0.3)};
  for (const auto& p : ps)
    for (const auto& fp : find_fixed_points(p)) {
      const double vref = std::max(1.0, std::abs(fp.well_energy));
      CHECK(fd_gradient_norm(p, fp) < 1e-10 * vref * 100);
      // analytic gradient is tighter than the fd oracle resolution
      const auto g = gradient(p, std::span<const double>(fp.location.data(), fp.dim));
      CHECK(std::hypot(g[0], g[1]) < 1e-10 * vref);
    }
}

TEST_CASE("locations scale as sqrt(mu)") {
  auto scaled = [](const CatastrophePotential& a, const CatastrophePotential& b) {
    auto fa = find_fixed_points(a), fb = find_fixed_points(b);
    REQUIRE(fa.size() == fb.size());
    // match points by direction
    for (auto& f : fa) {
      if (std::hypot(f.location[0], f.location[1]) < 1e-12) continue;
      bool matched = false;
      for (auto& g : fb) {
        const double r =
            std::hypot(g.location[0], g.location[1]) /
            std::hypot(f.location[0], f.location[1]);
        const double dot = f.location[0] * g.location[0] +
                           f.location[1] * g.location[1];
        if (dot > 0 && std::abs(r - std::numbers::sqrt2) < 1e-14) matched = true;
      }
      CHECK(matched);
    }
  };
  scaled(make_cusp(3.0, -1.3), make_cusp(6.0, -1.3));
  scaled(make_butterfly(5.0, 0.5, -4.0 / std::sqrt(3.0)),
         make_butterfly(10.0, 0.5, -4.0 / std::sqrt(3.0)));
  scaled(make_molar(8.0, -1.0, 0.6), make_molar(16.0, -1.0, 0.6));
}

TEST_CASE("excitation energies are mu-independent") {
  for (double mu : {1.0, 10.0, 100.0}) {
    auto p = make_cusp(mu, -0.7);
    for (auto& fp : find_fixed_points(p))
      if (fp.stable())
        CHECK(fp.excitation_energies[0] ==
              Catch::Approx(std::sqrt(1.4)).epsilon(1e-8));
    auto m = make_molar(mu, -1.0, 1.9);
    for (auto& fp : find_fixed_points(m))
      if (fp.stable()) {
        CHECK(fp.excitation_energies[0] ==
              Catch::Approx(std::sqrt(2.0)).epsilon(1e-8));
        CHECK(fp.excitation_energies[1] ==
              Catch::Approx(std::sqrt(0.9)).epsilon(1e-8));
      }
  }
}

TEST_CASE("cusp critical exponents") {
  auto ce = cusp_critical_exponents();
  CHECK(ce.nu == Catch::Approx(0.25).epsilon(1e-10));
  CHECK(ce.z == Catch::Approx(2.0).epsilon(1e-10));
  CHECK(ce.xi(4.0) == Catch::Approx(0.5).epsilon(1e-14));
}
