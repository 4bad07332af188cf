#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "qcat/fixed_points.hpp"
#include "qcat/fock.hpp"
#include "qcat/grid.hpp"
#include "qcat/potential.hpp"
#include "qcat/tridiag.hpp"

namespace qcat {

struct LanczosOptions {
  int max_iter = 300;
  double tol = 1e-9;  // relative residual on the lowest Ritz pair
};

struct LanczosResult {
  double eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Lanczos with full reorthogonalization for the lowest eigenpair of a
// symmetric operator.  The Krylov space inherits any symmetry of the start
// vector (H commutes with the lattice symmetries), so a symmetric positive
// v0 keeps the iteration inside the even sector where the ground state of a
// multi-well potential lives and the effective spectral gap is O(epsilon)
// rather than an exponentially small tunneling splitting.
template <typename ApplyOp>
LanczosResult lanczos_lowest(const ApplyOp& apply, const Eigen::VectorXd& v0,
                             const LanczosOptions& opt = {}) {
  const int n = static_cast<int>(v0.size());
  const int m_cap = std::min(opt.max_iter, n);
  // grow the basis in chunks; soft-mode solves need hundreds of vectors,
  // stiff ones a few dozen
  Eigen::MatrixXd basis(n, std::min(m_cap, 64));
  auto ensure_cols = [&basis, m_cap](int k) {
    if (k >= basis.cols())
      basis.conservativeResize(Eigen::NoChange,
                               std::min<int>(m_cap, basis.cols() + 64));
  };
  std::vector<double> alpha;  // alpha[k] = <v_k|H|v_k>
  std::vector<double> beta;   // beta[k] couples v_k <-> v_{k+1}

  // lowest Ritz pair of the tridiagonal over alpha[0..k], beta[0..k-1]
  auto ritz = [&](int k, Eigen::VectorXd& val, Eigen::MatrixXd& vec) {
    std::vector<double> d(alpha.begin(), alpha.begin() + k + 1);
    std::vector<double> e(beta.begin(),
                          beta.begin() + std::min<size_t>(k, beta.size()));
    detail::tridiag_lowest(std::move(d), std::move(e), 1, val, vec);
  };

  Eigen::VectorXd v = v0 / v0.norm();
  basis.col(0) = v;
  Eigen::VectorXd w(n), rval;
  Eigen::MatrixXd rvec;
  LanczosResult res;
  int k = 0;
  for (; k < m_cap; ++k) {
    apply(basis.col(k), w);
    alpha.push_back(w.dot(basis.col(k)));
    // full reorthogonalization, two passes (subsumes the three-term recurrence)
    for (int pass = 0; pass < 2; ++pass)
      w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w).eval();
    const double b = w.norm();

    if (k % 8 == 7 || k == m_cap - 1 || b < 1e-13) {
      ritz(k, rval, rvec);
      const double r = b * std::abs(rvec(k, 0));
      if (b < 1e-13 || r < opt.tol * std::max(1.0, std::abs(rval[0]))) {
        res.converged = true;
        break;
      }
    }
    if (k + 1 == m_cap) break;
    beta.push_back(b);
    ensure_cols(k + 1);
    basis.col(k + 1) = w / b;
  }

  const int kk = std::min(k, m_cap - 1);
  ritz(kk, rval, rvec);
  res.eigenvalue = rval[0];
  res.eigenvector = basis.leftCols(kk + 1) * rvec.col(0);
  res.eigenvector.normalize();
  res.iterations = kk + 1;
  Eigen::VectorXd hx(n);
  apply(res.eigenvector, hx);
  res.residual = (hx - res.eigenvalue * res.eigenvector).norm();
  if (!res.converged)
    res.converged =
        res.residual < 10 * opt.tol * std::max(1.0, std::abs(res.eigenvalue));
  return res;
}

struct Solve2DOptions {
  int memory_cap_points = 1 << 22;  // n1*n2 guard
  bool probe_gap = true;
  LanczosOptions lanczos;
};

struct Ground2D {
  TwoModeState state;
  double energy = 0.0;
  double energy_gap = 0.0;  // to the lowest state of odd y1-parity
  bool gap_warning = false;
  int iterations = 0;
};

// Lowest eigenpair of the 2D Hamiltonian -1/2 laplacian + V on the product
// grid (5-point stencil).  The start vector is the symmetric positive
// Boltzmann profile exp(-(V - Vmin)/2); a second short run with a y1-odd
// start estimates the gap to the antisymmetric partner, which collapses
// exponentially near the macroscopic lobe degeneracy.
inline Ground2D solve_2d_ground_state(const CatastrophePotential& p,
                                      const Grid1D& g1, const Grid1D& g2,
                                      const Solve2DOptions& opt = {}) {
  if (p.dim() != 2) throw ContractError("solve_2d_ground_state: model is not 2D");
  const int n1 = g1.n_points, n2 = g2.n_points;
  if (static_cast<long long>(n1) * n2 > opt.memory_cap_points)
    throw GridTooLargeError(
        "solve_2d_ground_state: grid exceeds memory cap; use a coarser grid "
        "or an iterative refinement level below the cap");
  const double d1 = g1.spacing(), d2 = g2.spacing();
  const double c1 = 0.5 / (d1 * d1), c2 = 0.5 / (d2 * d2);

  Eigen::MatrixXd V(n1, n2);
  double vmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      V(i, j) = eval_potential(p, g1.point(i), g2.point(j));
      vmin = std::min(vmin, V(i, j));
    }

  auto apply = [&](Eigen::Ref<const Eigen::VectorXd> x, Eigen::VectorXd& out) {
    Eigen::Map<const Eigen::MatrixXd> X(x.data(), n1, n2);
    out.resize(x.size());
    Eigen::Map<Eigen::MatrixXd> O(out.data(), n1, n2);
    O = (V.array() * X.array()).matrix() + 2.0 * (c1 + c2) * X;
    O.bottomRows(n1 - 1) -= c1 * X.topRows(n1 - 1);
    O.topRows(n1 - 1) -= c1 * X.bottomRows(n1 - 1);
    O.rightCols(n2 - 1) -= c2 * X.leftCols(n2 - 1);
    O.leftCols(n2 - 1) -= c2 * X.rightCols(n2 - 1);
  };

  Eigen::VectorXd v0(static_cast<long long>(n1) * n2);
  {
    Eigen::Map<Eigen::MatrixXd> V0(v0.data(), n1, n2);
    V0 = (-(V.array() - vmin).min(60.0) / 2.0).exp();
  }

  auto res = lanczos_lowest(apply, v0, opt.lanczos);
  if (!res.converged)
    throw ConvergenceError("solve_2d_ground_state: Lanczos did not converge "
                           "(residual " + std::to_string(res.residual) + ")",
                           {res.residual});

  Ground2D out;
  out.energy = res.eigenvalue;
  out.iterations = res.iterations;
  out.state.rep = TwoModeState::Rep::GridWavefunction;
  out.state.g1 = g1;
  out.state.g2 = g2;
  out.state.psi = Eigen::Map<const Eigen::MatrixXd>(res.eigenvector.data(), n1, n2);
  out.state.psi /= std::sqrt(out.state.psi.squaredNorm() * d1 * d2);
  if (out.state.psi.sum() < 0.0) out.state.psi = -out.state.psi;

  double edge = 0.0;
  const double peak_amp = out.state.psi.cwiseAbs().maxCoeff();
  for (int i = 0; i < n1; ++i)
    edge = std::max({edge, std::abs(out.state.psi(i, 0)),
                     std::abs(out.state.psi(i, n2 - 1))});
  for (int j = 0; j < n2; ++j)
    edge = std::max({edge, std::abs(out.state.psi(0, j)),
                     std::abs(out.state.psi(n1 - 1, j))});
  if (edge > 1e-6 * peak_amp)
    throw DomainTooSmallError("2D wavefunction touches the grid boundary",
                              edge / peak_amp);

  if (opt.probe_gap) {
    Eigen::VectorXd vodd = v0;
    Eigen::Map<Eigen::MatrixXd> VO(vodd.data(), n1, n2);
    for (int i = 0; i < n1; ++i) VO.row(i) *= g1.point(i);
    LanczosOptions lo = opt.lanczos;
    lo.tol = std::max(lo.tol, 1e-7);
    lo.max_iter = std::min(lo.max_iter, 200);
    auto odd = lanczos_lowest(apply, vodd, lo);
    out.energy_gap = odd.eigenvalue - res.eigenvalue;
    out.gap_warning = out.energy_gap < 1e-8;
  }
  return out;
}

}  // namespace qcat
