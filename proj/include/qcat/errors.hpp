#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qcat {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Contract violations: wrong dimension, bad parameter combination, broken
// caller-side invariant.
struct ContractError : Error {
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// A fixed point whose Hessian eigenvalue sits inside the marginal window
// [-1e-12, 1e-12]; the point is critical and cannot be classified
// stable/unstable.
struct MarginalPointError : Error {
  explicit MarginalPointError(const std::string& msg, double eig)
      : Error(msg), hessian_eigenvalue(eig) {}
  double hessian_eigenvalue;
};

// Excitation energies requested at a non-stable point.
struct UnstablePointError : Error {
  using Error::Error;
};

// theta = 0 or pi: the mode rotation is trivial and the entanglement ratio
// is undefined.
struct NoMixingError : Error {
  using Error::Error;
};

// Fock truncation tail above tolerance; caller should increase n_max.
struct TruncationError : Error {
  explicit TruncationError(const std::string& msg, double tail_prob)
      : Error(msg), tail(tail_prob) {}
  double tail;
};

// Wavefunction amplitude at the grid edge above tolerance.
struct DomainTooSmallError : Error {
  explicit DomainTooSmallError(const std::string& msg, double edge_amp)
      : Error(msg), edge_amplitude(edge_amp) {}
  double edge_amplitude;
};

// Iterative solver or refinement loop failed to converge; carries the
// history of iterates for diagnosis.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, std::vector<double> hist)
      : Error(msg), history(std::move(hist)) {}
  std::vector<double> history;
};

// Requested 2D grid exceeds the configured memory cap.
struct GridTooLargeError : Error {
  using Error::Error;
};

// Sweep maximum sits on the range boundary; no interior peak bracketed.
struct PeakNotBracketedError : Error {
  using Error::Error;
};

// Power-law fit input where x - x_c changes sign across the data.
struct NonMonotoneApproachError : Error {
  using Error::Error;
};

// Model has no stable fixed point (potential invalid for ground-state
// analysis).
struct InvalidModelError : Error {
  using Error::Error;
};

// Point-level failure inside a sweep; carries the parameter value.
struct SweepPointError : Error {
  SweepPointError(const std::string& msg, double param_value)
      : Error(msg), param(param_value) {}
  double param;
};

}  // namespace qcat
