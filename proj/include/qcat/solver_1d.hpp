#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "qcat/fixed_points.hpp"
#include "qcat/grid.hpp"
#include "qcat/potential.hpp"
#include "qcat/tridiag.hpp"

namespace qcat {

struct Ground1D {
  double energy = 0.0;
  Eigen::VectorXd psi;      // normalized with quadrature weight = spacing
  double energy_gap = 0.0;  // to the next eigenvalue
};

namespace detail {

inline void normalize_with_weight(Eigen::VectorXd& v, double dy) {
  v /= std::sqrt(v.squaredNorm() * dy);
}

// Even-parity projection for exponentially quasi-degenerate double wells:
// the true ground state of a bounded symmetric 1D potential is even, but a
// dense eigensolver may return an arbitrary mixture of the near-degenerate
// even/odd pair.
inline Eigen::VectorXd project_even(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out[i] = 0.5 * (v[i] + v[n - 1 - i]);
  return out;
}

}  // namespace detail

// Lowest eigenpair of H = -1/2 d^2/dy^2 + V(y) on the grid, second-order
// central differences, Dirichlet boundaries.
inline Ground1D solve_1d_ground_state(const std::function<double(double)>& V,
                                      const Grid1D& g) {
  const int n = g.n_points;
  const double dy = g.spacing();
  const double k = 1.0 / (dy * dy);
  std::vector<double> diag(n), off(n - 1, -0.5 * k);
  std::vector<double> vpot(n);
  for (int i = 0; i < n; ++i) {
    vpot[i] = V(g.point(i));
    diag[i] = k + vpot[i];
  }

  Eigen::VectorXd vals;
  Eigen::MatrixXd vecs;
  detail::tridiag_lowest(diag, off, 2, vals, vecs);

  Eigen::VectorXd psi = vecs.col(0);

  bool v_symmetric = g.symmetric();
  if (v_symmetric) {
    double vscale = 1.0;
    for (double v : vpot) vscale = std::max(vscale, std::abs(v));
    for (int i = 0; i < n / 2 && v_symmetric; ++i)
      if (std::abs(vpot[i] - vpot[n - 1 - i]) > 1e-10 * vscale)
        v_symmetric = false;
  }
  if (v_symmetric) {
    Eigen::VectorXd even = detail::project_even(psi);
    const double frac = even.squaredNorm() / psi.squaredNorm();
    if (frac < 0.25) {
      // returned vector was odd-dominated; the even partner is in column 1
      even = detail::project_even(vecs.col(1));
    }
    psi = even;
  }

  detail::normalize_with_weight(psi, dy);
  if (psi.sum() < 0.0) psi = -psi;

  const double edge = std::max(std::abs(psi[0]), std::abs(psi[n - 1]));
  if (edge > 1e-6)
    throw DomainTooSmallError("wavefunction touches the grid boundary", edge);

  return {vals[0], std::move(psi), vals[1] - vals[0]};
}

inline Ground1D solve_1d_ground_state(const CatastrophePotential& p,
                                      const Grid1D& g) {
  if (p.dim() != 1) throw ContractError("solve_1d_ground_state: model is not 1D");
  return solve_1d_ground_state([&p](double y) { return eval_potential(p, y); }, g);
}

// Grid satisfying the coverage rule: all fixed points inside with a margin
// of at least five harmonic lengths of the softest relevant well (clamped --
// near criticality the soft length diverges).
inline Grid1D default_grid_for(const CatastrophePotential& p, int n_points = 1024) {
  double reach = 0.0;
  double eps_soft = 1.0;
  auto fps = find_fixed_points(p);
  for (const auto& fp : fps) {
    reach = std::max({reach, std::abs(fp.location[0]), std::abs(fp.location[1])});
    if (fp.stable())
      for (double e : fp.excitation_energies)
        eps_soft = std::min(eps_soft, e);
  }
  const double margin = 5.0 / std::sqrt(std::clamp(eps_soft, 0.2, 1.0)) + 3.0;
  return make_symmetric_grid(reach + margin, n_points);
}

}  // namespace qcat
