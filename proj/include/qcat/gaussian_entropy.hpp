#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "qcat/errors.hpp"

namespace qcat {

inline constexpr double kInfEntropy = std::numeric_limits<double>::infinity();

// Entropies below this many bits are indistinguishable from an exact product
// state and are flattened to 0.
inline constexpr double kEntropyUnderflow = 1e-12;

// Gaussian RDM shape parameter 2*alpha/beta for a 1D-model lobe with
// excitation energy epsilon1, traced against the unit-frequency partner mode
// after a mixing rotation theta.  Returns +inf at epsilon1 = 1 (isotropic
// state, zero entanglement).
inline double ratio_general_theta(double epsilon1, double theta) {
  if (!(epsilon1 > 0.0)) throw DomainError("ratio_general_theta: epsilon1 <= 0");
  if (theta == 0.0 || theta == std::numbers::pi)
    throw NoMixingError("theta = 0 or pi: no mode mixing, entanglement trivially 0");
  if (!(theta > 0.0 && theta < std::numbers::pi))
    throw DomainError("ratio_general_theta: theta outside (0, pi)");
  if (epsilon1 == 1.0) return kInfEntropy;
  const double th = std::tan(theta / 2.0);
  const double mix = 1.0 / (th * th) + th * th;  // cot^2 + tan^2
  const double d = epsilon1 - 1.0;
  return ((epsilon1 + 1.0) * (epsilon1 + 1.0) + 2.0 * epsilon1 * mix) / (d * d);
}

// Von Neumann entropy in bits of a Gaussian RDM with shape 2*alpha/beta.
// The kernel is equivalent to a thermal oscillator with
// Omega/T = arccosh(ratio); S follows from the geometric eigenvalue ladder.
inline double entropy_from_ratio(double ratio) {
  if (ratio < 1.0)
    throw DomainError("entropy_from_ratio: ratio < 1 (arccosh undefined; "
                      "upstream Gaussian algebra is broken)");
  if (ratio == 1.0) return kInfEntropy;
  if (std::isinf(ratio)) return 0.0;
  // arccosh(1 + d) without cancellation near 1
  const double d = ratio - 1.0;
  const double w = 0.5 * std::log1p(d + std::sqrt(d * (d + 2.0)));  // Omega/2T
  const double z = std::exp(-2.0 * w);
  const double nats = 2.0 * w * z / (1.0 - z) - std::log1p(-z);
  const double bits = nats / std::numbers::ln2;
  return bits < kEntropyUnderflow ? 0.0 : bits;
}

// Shape parameter for one diagonal lobe of the molar catastrophe, 0<gamma<1:
// modes (sqrt(2), sqrt(2(1-gamma)/(1+gamma))) rotated pi/4 against the
// (y1, y2) partition.
inline double ratio_molar_diagonal(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw DomainError("ratio_molar_diagonal: gamma outside (0, 1)");
  const double u = std::sqrt((1.0 - gamma) * (1.0 + gamma));
  return (4.0 - 3.0 * gamma * gamma + 4.0 * u) / (gamma * gamma);
}

namespace detail {

// Same algebra without the paper-facing domain restriction: ratio from two
// mode energies at 45 degrees, k = eps_minus / eps_plus.  Used for molar
// lobes with gamma <= 0 where the diagonal wells still exist.
inline double ratio_diagonal_from_k(double k) {
  if (!(k > 0.0)) throw DomainError("ratio_diagonal_from_k: k <= 0");
  if (k == 1.0) return kInfEntropy;
  const double d = 1.0 - k;
  return (1.0 + 6.0 * k + k * k) / (d * d);
}

}  // namespace detail

}  // namespace qcat
