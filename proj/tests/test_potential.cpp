#include <catch_amalgamated.hpp>
#include <cmath>

#include "qcat/potential.hpp"

using namespace qcat;

TEST_CASE("cusp potential value") {
  auto p = make_cusp(1.0, 0.0);
  CHECK(eval_potential(p, 1.0) == Catch::Approx(0.25).epsilon(1e-15));
  auto p2 = make_cusp(4.0, -1.0);
  // y^4/(4 mu) + A y^2 / 2
  CHECK(eval_potential(p2, 2.0) == Catch::Approx(16.0 / 16.0 - 2.0));
}

TEST_CASE("butterfly well-bottom degeneracy at A2=1") {
  // at A4 = -4/sqrt(3), A2 = 1, the displaced wells sit at y^2 = sqrt(3) mu
  // with V = 0, degenerate with the origin
  const double A4 = -4.0 / std::sqrt(3.0);
  auto p = make_butterfly(1.0, 1.0, A4);
  const double y = std::sqrt(std::sqrt(3.0));
  CHECK(std::abs(eval_potential(p, y)) < 1e-14);
  CHECK(eval_potential(p, 0.0) == 0.0);
}

TEST_CASE("molar vanishes at the origin") {
  auto p = make_molar(7.0, -1.0, 2.5);
  CHECK(eval_potential(p, 0.0, 0.0) == 0.0);
}

TEST_CASE("dimension mismatch is a contract violation") {
  auto p = make_cusp(1.0, 1.0);
  const double y2[2] = {1.0, 2.0};
  CHECK_THROWS_AS(eval_potential(p, std::span<const double>(y2, 2)),
                  ContractError);
  auto m = make_molar(1.0, -1.0, 2.0);
  const double y1[1] = {1.0};
  CHECK_THROWS_AS(eval_potential(m, std::span<const double>(y1, 1)),
                  ContractError);
}

TEST_CASE("boundedness") {
  CHECK(check_bounded_below(make_cusp(2.0, -5.0)));
  CHECK(check_bounded_below(make_butterfly(3.0, -2.0, -8.0)));
  CHECK(check_bounded_below(make_molar(1.0, -1.0, -0.5)));

  // gamma = -2 makes the quartic form negative along the diagonal; the
  // factory rejects it, so build the struct directly and check the predicate
  CatastrophePotential bad{Model::Molar, 1.0, {{"A", -1.0}, {"gamma", -2.0}}, 0.0};
  CHECK_FALSE(check_bounded_below(bad));
  // oracle: V along y1 = y2 = t goes to -inf for large t
  const double t = 50.0;
  CHECK(eval_potential(bad, t, t) < 0.0);
  CHECK(eval_potential(bad, 2 * t, 2 * t) < eval_potential(bad, t, t));
  CHECK_THROWS_AS(make_molar(1.0, -1.0, -2.0), ContractError);
}

TEST_CASE("invalid construction") {
  CHECK_THROWS_AS(make_cusp(0.0, 1.0), ContractError);
  CHECK_THROWS_AS(make_cusp(-3.0, 1.0), ContractError);
  CHECK_THROWS_AS(with_param(make_cusp(1.0, 1.0), "B", 0.0), ContractError);
}

TEST_CASE("gradient and hessian match finite differences") {
  const double h = 1e-5;
  auto fd_check_1d = [&](const CatastrophePotential& p, double y) {
    const auto g = gradient(p, std::span<const double>(&y, 1));
    const double num =
        (eval_potential(p, y + h) - eval_potential(p, y - h)) / (2 * h);
    CHECK(g[0] == Catch::Approx(num).margin(1e-7));
    const auto hh = hessian(p, std::span<const double>(&y, 1));
    const double num2 = (eval_potential(p, y + h) - 2 * eval_potential(p, y) +
                         eval_potential(p, y - h)) /
                        (h * h);
    CHECK(hh[0] == Catch::Approx(num2).margin(1e-5));
  };
  fd_check_1d(make_cusp(3.0, -1.5), 1.7);
  fd_check_1d(make_butterfly(2.0, 0.7, -2.0), -1.3);

  auto p = make_molar(5.0, -1.0, 1.8);
  const double y[2] = {1.1, -0.7};
  const auto g = gradient(p, std::span<const double>(y, 2));
  const double gx = (eval_potential(p, y[0] + h, y[1]) -
                     eval_potential(p, y[0] - h, y[1])) /
                    (2 * h);
  const double gy = (eval_potential(p, y[0], y[1] + h) -
                     eval_potential(p, y[0], y[1] - h)) /
                    (2 * h);
  CHECK(g[0] == Catch::Approx(gx).margin(1e-7));
  CHECK(g[1] == Catch::Approx(gy).margin(1e-7));
  const auto hh = hessian(p, std::span<const double>(y, 2));
  const double hxy = (eval_potential(p, y[0] + h, y[1] + h) -
                      eval_potential(p, y[0] + h, y[1] - h) -
                      eval_potential(p, y[0] - h, y[1] + h) +
                      eval_potential(p, y[0] - h, y[1] - h)) /
                     (4 * h * h);
  CHECK(hh[2] == Catch::Approx(hxy).margin(1e-5));
}
