#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "qcat/errors.hpp"
#include "qcat/fock.hpp"

namespace qcat {

// Reduced density matrix of one mode of a pure two-mode state.  In the grid
// representation the entries are the kernel rho(x, x') with the quadrature
// weight folded in, so that eigenvalues are occupation probabilities.
struct ReducedDensityMatrix {
  enum class Basis { Fock, Grid };
  Basis basis = Basis::Fock;
  Eigen::MatrixXd rho;
};

inline ReducedDensityMatrix reduced_density_matrix(const TwoModeState& s,
                                                   int traced_mode) {
  if (traced_mode != 1 && traced_mode != 2)
    throw ContractError("reduced_density_matrix: traced_mode must be 1 or 2");
  ReducedDensityMatrix r;
  if (s.rep == TwoModeState::Rep::FockAmplitudes) {
    r.basis = ReducedDensityMatrix::Basis::Fock;
    if (traced_mode == 2)
      r.rho = s.amps * s.amps.transpose();
    else
      r.rho = s.amps.transpose() * s.amps;
  } else {
    r.basis = ReducedDensityMatrix::Basis::Grid;
    const double w = s.g1.spacing() * s.g2.spacing();
    if (traced_mode == 2)
      r.rho = s.psi * s.psi.transpose() * w;
    else
      r.rho = s.psi.transpose() * s.psi * w;
  }
  // discretized kernels pick up rounding asymmetry from the matrix product
  r.rho = 0.5 * (r.rho + r.rho.transpose()).eval();
  return r;
}

// S = -sum p lg p over eigenvalues above 1e-14, in bits.
inline double von_neumann_entropy(const ReducedDensityMatrix& rdm) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rdm.rho,
                                                    Eigen::EigenvaluesOnly);
  double bits = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()[i];
    if (p < -1e-8)
      throw DomainError("von_neumann_entropy: eigenvalue " + std::to_string(p) +
                        " below -1e-8: invalid density matrix");
    if (p > 1e-14) bits -= p * std::log2(p);
  }
  return bits;
}

}  // namespace qcat
