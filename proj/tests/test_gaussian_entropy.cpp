#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "qcat/gaussian_entropy.hpp"

using namespace qcat;
using std::numbers::pi;

namespace {

// Independent oracle: eigenvalues of the equivalent thermal oscillator are
// the geometric ladder p_n = (1 - z) z^n with z = exp(-arccosh(ratio));
// sum -p lg p directly.
double entropy_oracle_bits(double ratio) {
  const double w = std::acosh(ratio);
  const double z = std::exp(-w);
  double s = 0.0;
  double p = 1.0 - z;
  for (int n = 0; n < 100000 && p > 1e-20; ++n, p *= z) s -= p * std::log2(p);
  return s;
}

}  // namespace

TEST_CASE("ratio at theta = pi/2") {
  CHECK(ratio_general_theta(2.0, pi / 2) == Catch::Approx(17.0).epsilon(1e-14));
  CHECK(ratio_general_theta(0.5, pi / 2) == Catch::Approx(17.0).epsilon(1e-14));
  CHECK(std::isinf(ratio_general_theta(1.0, 0.3)));
}

TEST_CASE("ratio errors") {
  CHECK_THROWS_AS(ratio_general_theta(2.0, 0.0), NoMixingError);
  CHECK_THROWS_AS(ratio_general_theta(2.0, pi), NoMixingError);
  CHECK_THROWS_AS(ratio_general_theta(-1.0, pi / 2), DomainError);
}

TEST_CASE("entropy values") {
  CHECK(entropy_from_ratio(17.0) == Catch::Approx(0.197).margin(1e-3));
  CHECK(entropy_from_ratio(17.0) == Catch::Approx(0.1973718899).epsilon(1e-9));
  CHECK(std::isinf(entropy_from_ratio(1.0)));
  CHECK(entropy_from_ratio(kInfEntropy) == 0.0);
}

TEST_CASE("entropy against the thermal-ladder oracle") {
  for (double ratio : {1.05, 1.5, std::cosh(2.0), 5.0, 17.0, 100.0, 1e4}) {
    CHECK(entropy_from_ratio(ratio) ==
          Catch::Approx(entropy_oracle_bits(ratio)).epsilon(1e-10));
  }
  // frozen value at Omega/T = 2, i.e. ratio = cosh(2):
  // S = (1/ln 2) [coth(1) - ln(2 sinh 1)] = 0.661402... bits
  CHECK(entropy_from_ratio(std::cosh(2.0)) ==
        Catch::Approx(0.6614017286).epsilon(1e-9));
}

TEST_CASE("entropy errors and edge behavior") {
  CHECK_THROWS_AS(entropy_from_ratio(0.999), DomainError);
  // strictly decreasing on a grid spanning (1, 1e3]
  double prev = kInfEntropy;
  for (int i = 0; i < 1000; ++i) {
    const double ratio = 1.0 + 1e-3 * std::pow(1e6, i / 999.0);
    const double s = entropy_from_ratio(ratio);
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("epsilon <-> 1/epsilon symmetry at theta = pi/2") {
  std::mt19937 rng(991);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double eps = std::exp(u(rng));
    if (eps == 1.0) continue;
    const double a = ratio_general_theta(eps, pi / 2);
    const double b = ratio_general_theta(1.0 / eps, pi / 2);
    CHECK(a == Catch::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("theta = pi/2 maximizes the entanglement") {
  std::mt19937 rng(1723);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    double eps = std::exp(u(rng));
    if (std::abs(eps - 1.0) < 1e-3) eps = 2.0;
    const double r_mid = ratio_general_theta(eps, pi / 2);
    for (int k = 1; k <= 40; ++k) {
      const double theta = pi * k / 41.0;
      CHECK(ratio_general_theta(eps, theta) >= r_mid - 1e-12);
    }
  }
}

TEST_CASE("molar diagonal ratio") {
  CHECK(ratio_molar_diagonal(0.6) == Catch::Approx(17.0).epsilon(1e-14));
  // gamma -> 1-: ratio -> 1 (entropy diverges)
  CHECK(ratio_molar_diagonal(1.0 - 1e-12) == Catch::Approx(1.0).margin(1e-4));
  CHECK(entropy_from_ratio(ratio_molar_diagonal(0.999999)) > 4.0);
  // gamma -> 0+: decoupled modes, no entanglement
  CHECK(ratio_molar_diagonal(1e-8) > 1e15);
  CHECK_THROWS_AS(ratio_molar_diagonal(0.0), DomainError);
  CHECK_THROWS_AS(ratio_molar_diagonal(1.0), DomainError);
  CHECK_THROWS_AS(ratio_molar_diagonal(1.5), DomainError);
}
