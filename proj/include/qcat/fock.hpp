#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "qcat/errors.hpp"
#include "qcat/grid.hpp"

namespace qcat {

// Pure two-mode state, either amplitudes c(n1, n2) in the unit-frequency
// Fock basis or a wavefunction sampled on a product grid.
struct TwoModeState {
  enum class Rep { FockAmplitudes, GridWavefunction };
  Rep rep = Rep::FockAmplitudes;
  Eigen::MatrixXd amps;  // Fock: c(n1, n2)
  Eigen::MatrixXd psi;   // grid: psi(i1, i2)
  Grid1D g1, g2;

  double norm() const {
    if (rep == Rep::FockAmplitudes) return amps.norm();
    return std::sqrt(psi.squaredNorm() * g1.spacing() * g2.spacing());
  }
};

namespace detail {

// Unit-frequency Hermite functions h_0..h_nmax at y, by upward recurrence.
inline void hermite_column(double y, int n_max, std::vector<double>& h) {
  h.resize(n_max + 1);
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
  if (n_max >= 1) h[1] = std::numbers::sqrt2 * y * h[0];
  for (int n = 1; n < n_max; ++n)
    h[n + 1] = std::sqrt(2.0 / (n + 1)) * y * h[n] -
               std::sqrt(n / (n + 1.0)) * h[n - 1];
}

}  // namespace detail

// Projection of a normalized grid wavefunction onto the unit-frequency Fock
// basis: c_n = <n|psi> by trapezoid-free quadrature (the integrand decays to
// zero at both ends, so the plain Riemann sum is spectrally accurate).
// Throws TruncationError when more than 1e-8 of the norm lies outside n_max.
inline Eigen::VectorXd fock_coefficients(const Eigen::VectorXd& psi,
                                         const Grid1D& g, int n_max) {
  if (psi.size() != g.n_points)
    throw ContractError("fock_coefficients: wavefunction/grid size mismatch");
  const double dy = g.spacing();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n_max + 1);
  std::vector<double> h;
  for (int i = 0; i < g.n_points; ++i) {
    detail::hermite_column(g.point(i), n_max, h);
    const double w = psi[i] * dy;
    for (int n = 0; n <= n_max; ++n) c[n] += h[n] * w;
  }
  const double tail = 1.0 - c.squaredNorm();
  if (tail > 1e-8)
    throw TruncationError("fock_coefficients: truncation tail above 1e-8; "
                          "increase n_max",
                          tail);
  c /= c.norm();
  return c;
}

// Passive SU(2) beam-splitter rotation applied to (sum_n c_n |n>) (x) |0>:
//   |n,0>  ->  sum_k sqrt(C(n,k)) cos^k(theta/2) (-sin(theta/2))^{n-k} |k,n-k>
// Total excitation number is conserved anti-diagonal by anti-diagonal.
inline TwoModeState beam_splitter_rotate(const Eigen::VectorXd& c1, double theta) {
  const int n_max = static_cast<int>(c1.size()) - 1;
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  TwoModeState st;
  st.rep = TwoModeState::Rep::FockAmplitudes;
  st.amps = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
  const double log_c = std::log(std::abs(c)), log_s = std::log(std::abs(s));
  for (int n = 0; n <= n_max; ++n) {
    if (c1[n] == 0.0) continue;
    for (int k = 0; k <= n; ++k) {
      const double log_binom_half =
          0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                 std::lgamma(n - k + 1.0));
      double coef;
      if ((k > 0 && c == 0.0) || (k < n && s == 0.0)) {
        coef = 0.0;
      } else {
        coef = std::exp(log_binom_half + k * log_c + (n - k) * log_s);
        if (s > 0.0 && (n - k) % 2 == 1) coef = -coef;  // sign of (-s)^{n-k}
        if (c < 0.0 && k % 2 == 1) coef = -coef;
      }
      st.amps(k, n - k) += c1[n] * coef;
    }
  }
  return st;
}

}  // namespace qcat
