#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cmath>

#include "qcat/density_matrix.hpp"
#include "qcat/errors.hpp"
#include "qcat/solver_2d.hpp"

namespace qcat {

// Two-mode cusp Hamiltonian in the bare-mode Fock basis at theta = pi/2,
// truncated at n_max quanta per mode:
//   (A+3)/4 (n1 + n2 + 1)
//   + (A-1)/8 (a1+^2 + a1^2 + a2+^2 + a2^2)
//   + (A-1)/4 (a1+ a2 + a1 a2+ + a1+ a2+ + a1 a2)
//   + 1/(64 mu) (a1+ + a1 + a2+ + a2)^4
// Index convention: |n1, n2> -> n1 * (n_max+1) + n2.
inline Eigen::SparseMatrix<double> build_cusp_fock_hamiltonian(double A,
                                                               double mu,
                                                               int n_max) {
  if (n_max < 10) throw ContractError("build_cusp_fock_hamiltonian: n_max < 10");
  if (!(mu > 0.0)) throw ContractError("build_cusp_fock_hamiltonian: mu <= 0");
  const int d = n_max + 1;
  const int dim = d * d;
  using Sp = Eigen::SparseMatrix<double>;
  using T = Eigen::Triplet<double>;

  auto idx = [d](int n1, int n2) { return n1 * d + n2; };

  std::vector<T> tq;  // Q = a1+ + a1 + a2+ + a2
  tq.reserve(4 * dim);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2) {
      if (n1 + 1 < d) {
        const double v = std::sqrt(n1 + 1.0);
        tq.emplace_back(idx(n1 + 1, n2), idx(n1, n2), v);
        tq.emplace_back(idx(n1, n2), idx(n1 + 1, n2), v);
      }
      if (n2 + 1 < d) {
        const double v = std::sqrt(n2 + 1.0);
        tq.emplace_back(idx(n1, n2 + 1), idx(n1, n2), v);
        tq.emplace_back(idx(n1, n2), idx(n1, n2 + 1), v);
      }
    }
  Sp Q(dim, dim);
  Q.setFromTriplets(tq.begin(), tq.end());
  Sp Q2 = Q * Q;
  Sp Q4 = Q2 * Q2;

  std::vector<T> th;
  th.reserve(8 * dim);
  const double cn = (A + 3.0) / 4.0;
  const double cs = (A - 1.0) / 8.0;
  const double cx = (A - 1.0) / 4.0;
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2) {
      const int i = idx(n1, n2);
      th.emplace_back(i, i, cn * (n1 + n2 + 1.0));
      // a1+^2 / a1^2
      if (n1 + 2 < d) {
        const double v = cs * std::sqrt((n1 + 1.0) * (n1 + 2.0));
        th.emplace_back(idx(n1 + 2, n2), i, v);
        th.emplace_back(i, idx(n1 + 2, n2), v);
      }
      if (n2 + 2 < d) {
        const double v = cs * std::sqrt((n2 + 1.0) * (n2 + 2.0));
        th.emplace_back(idx(n1, n2 + 2), i, v);
        th.emplace_back(i, idx(n1, n2 + 2), v);
      }
      // a1+ a2 + h.c.
      if (n1 + 1 < d && n2 > 0) {
        const double v = cx * std::sqrt((n1 + 1.0) * n2);
        th.emplace_back(idx(n1 + 1, n2 - 1), i, v);
        th.emplace_back(i, idx(n1 + 1, n2 - 1), v);
      }
      // a1+ a2+ + h.c.
      if (n1 + 1 < d && n2 + 1 < d) {
        const double v = cx * std::sqrt((n1 + 1.0) * (n2 + 1.0));
        th.emplace_back(idx(n1 + 1, n2 + 1), i, v);
        th.emplace_back(i, idx(n1 + 1, n2 + 1), v);
      }
    }
  Sp H(dim, dim);
  H.setFromTriplets(th.begin(), th.end());
  H += (1.0 / (64.0 * mu)) * Q4;
  // sparse products may sum symmetric entries in different orders
  Sp Ht = Sp(H.transpose());
  H = 0.5 * (H + Ht);
  return H;
}

struct CuspFockGround {
  double energy = 0.0;
  double entropy_bits = 0.0;
  Eigen::MatrixXd amps;  // c(n1, n2) of the ground state
  int n_max = 0;
};

// Ground state of the truncated Fock Hamiltonian via Lanczos, with the
// top-band occupation checked against the truncation tolerance.
inline CuspFockGround cusp_fock_ground_state(double A, double mu, int n_max) {
  const auto H = build_cusp_fock_hamiltonian(A, mu, n_max);
  const int d = n_max + 1;
  auto apply = [&H](Eigen::Ref<const Eigen::VectorXd> x, Eigen::VectorXd& out) {
    out.noalias() = H * x;
  };
  Eigen::VectorXd v0 = Eigen::VectorXd::Zero(d * d);
  // even-sector start: vacuum plus a touch of the even quanta
  v0[0] = 1.0;
  for (int n1 = 0; n1 < d; n1 += 2)
    for (int n2 = 0; n2 < d; n2 += 2) v0[n1 * d + n2] += std::exp(-0.1 * (n1 + n2));
  LanczosOptions lo;
  lo.max_iter = 400;
  lo.tol = 1e-10;
  auto res = lanczos_lowest(apply, v0, lo);
  if (!res.converged)
    throw ConvergenceError("cusp_fock_ground_state: Lanczos did not converge",
                           {res.residual});
  CuspFockGround out;
  out.energy = res.eigenvalue;
  out.n_max = n_max;
  out.amps = Eigen::Map<const Eigen::MatrixXd>(res.eigenvector.data(), d, d)
                 .transpose();  // eigenvector index n1*d+n2 is row-major in n1
  double band = 0.0;
  const int lo_band = std::max(0, d - 5);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2)
      if (n1 >= lo_band || n2 >= lo_band) band += out.amps(n1, n2) * out.amps(n1, n2);
  if (band > 1e-8)
    throw TruncationError("cusp_fock_ground_state: occupation in the top "
                          "truncation band above 1e-8; increase n_max",
                          band);
  TwoModeState st;
  st.rep = TwoModeState::Rep::FockAmplitudes;
  st.amps = out.amps;
  out.entropy_bits = von_neumann_entropy(reduced_density_matrix(st, 2));
  return out;
}

}  // namespace qcat
