#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "qcat/potential.hpp"

namespace qcat {

// Hessian eigenvalues inside [-kMarginalTol, kMarginalTol] cannot be
// classified: the point is critical (epsilon -> 0).
inline constexpr double kMarginalTol = 1e-12;

// Relative tolerance for treating well-bottom energies as degenerate.
inline constexpr double kWellDegeneracyRelTol = 1e-9;

enum class Stability { Stable, Unstable, Marginal };

// A stationary point of the rescaled potential.  excitation_energies are
// sqrt(Hessian eigenvalues) and are filled for stable points only; for 2D
// points the first entry is the mode along the displacement direction.
struct FixedPoint {
  std::array<double, 2> location{0.0, 0.0};
  int dim = 1;
  Stability stability = Stability::Stable;
  std::vector<double> excitation_energies;
  std::vector<double> hessian_eigenvalues;
  double normal_mode_angle = 0.0;  // 2D only, folded into [0, pi/4]
  double well_energy = 0.0;

  bool stable() const { return stability == Stability::Stable; }
  bool marginal() const { return stability == Stability::Marginal; }
};

namespace detail {

// One or two Newton steps on the gradient from a closed-form seed; enough to
// push |grad V| to rounding level.
inline void newton_polish(const CatastrophePotential& p, std::array<double, 2>& y,
                          int dim) {
  for (int it = 0; it < 3; ++it) {
    std::span<const double> ys(y.data(), dim);
    auto g = gradient(p, ys);
    auto h = hessian(p, ys);
    if (dim == 1) {
      if (std::abs(h[0]) < 1e-8) return;  // marginal; leave the seed
      y[0] -= g[0] / h[0];
    } else {
      const double det = h[0] * h[1] - h[2] * h[2];
      if (std::abs(det) < 1e-8) return;
      y[0] -= (h[1] * g[0] - h[2] * g[1]) / det;
      y[1] -= (h[0] * g[1] - h[2] * g[0]) / det;
    }
  }
}

inline Stability classify(double min_eig) {
  if (min_eig > kMarginalTol) return Stability::Stable;
  if (min_eig < -kMarginalTol) return Stability::Unstable;
  return Stability::Marginal;
}

// Eigen-decomposition of the symmetric 2x2 Hessian {h11,h22,h12}; returns
// eigenvalues ordered with the displacement-aligned mode first and the angle
// of that mode folded into [0, pi/4].
struct Hess2D {
  double eig_radial, eig_transverse, angle;
};

inline Hess2D hessian_modes(const std::array<double, 3>& h,
                            const std::array<double, 2>& loc) {
  const double m = 0.5 * (h[0] + h[1]);
  const double d = 0.5 * (h[0] - h[1]);
  const double r = std::hypot(d, h[2]);
  const double lo = m - r, hi = m + r;
  // eigenvector of `hi`: (h12, hi - h11) or (hi - h22, h12)
  double vx, vy;
  if (std::abs(h[2]) < 1e-300 && std::abs(d) < 1e-300) {
    vx = 1.0;
    vy = 0.0;  // isotropic; any axis
  } else if (std::abs(hi - h[0]) > std::abs(hi - h[1])) {
    vx = h[2];
    vy = hi - h[0];
  } else {
    vx = hi - h[1];
    vy = h[2];
  }
  const double loc_norm = std::hypot(loc[0], loc[1]);
  double radial, transverse, ax, ay;
  if (loc_norm > 1e-12) {
    // align the "radial" label with the displacement direction
    const double align_hi = std::abs(vx * loc[0] + vy * loc[1]);
    const double align_lo = std::abs(-vy * loc[0] + vx * loc[1]);
    if (align_hi >= align_lo) {
      radial = hi;
      transverse = lo;
      ax = vx;
      ay = vy;
    } else {
      radial = lo;
      transverse = hi;
      ax = -vy;
      ay = vx;
    }
  } else {
    radial = hi;
    transverse = lo;
    ax = vx;
    ay = vy;
  }
  double ang = std::atan2(std::abs(ay), std::abs(ax));  // [0, pi/2]
  if (ang > std::numbers::pi / 4) ang = std::numbers::pi / 2 - ang;
  return {radial, transverse, ang};
}

inline FixedPoint make_point(const CatastrophePotential& p,
                             std::array<double, 2> loc) {
  const int dim = p.dim();
  newton_polish(p, loc, dim);
  std::span<const double> ys(loc.data(), dim);
  FixedPoint fp;
  fp.location = loc;
  fp.dim = dim;
  fp.well_energy = eval_potential(p, ys);
  const auto h = hessian(p, ys);
  if (dim == 1) {
    fp.hessian_eigenvalues = {h[0]};
    fp.stability = classify(h[0]);
    if (fp.stable()) fp.excitation_energies = {std::sqrt(h[0])};
  } else {
    const auto hm = hessian_modes(h, loc);
    fp.hessian_eigenvalues = {hm.eig_radial, hm.eig_transverse};
    fp.stability = classify(std::min(hm.eig_radial, hm.eig_transverse));
    fp.normal_mode_angle = hm.angle;
    if (fp.stable())
      fp.excitation_energies = {std::sqrt(hm.eig_radial),
                                std::sqrt(hm.eig_transverse)};
  }
  return fp;
}

inline bool near_duplicate(const FixedPoint& a, const std::array<double, 2>& loc,
                           double scale) {
  return std::hypot(a.location[0] - loc[0], a.location[1] - loc[1]) <
         1e-9 * scale;
}

}  // namespace detail

// All real stationary points of the potential, classified by the Hessian.
// Locations come from the closed-form stationarity roots (polynomial of
// degree <= 5 in y^2) followed by a Newton polish.
inline std::vector<FixedPoint> find_fixed_points(const CatastrophePotential& p) {
  if (!check_bounded_below(p))
    throw InvalidModelError("potential not bounded below");
  std::vector<std::array<double, 2>> seeds;
  seeds.push_back({0.0, 0.0});
  switch (p.model) {
    case Model::Cusp: {
      const double A = p.param("A");
      if (A < 0.0) {
        const double r = std::sqrt(p.mu * (-A));
        seeds.push_back({r, 0.0});
        seeds.push_back({-r, 0.0});
      }
      break;
    }
    case Model::Butterfly: {
      const double A2 = p.param("A2"), A4 = p.param("A4");
      const double disc = A4 * A4 - 4.0 * A2;
      if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        for (double t : {0.5 * (-A4 + s), 0.5 * (-A4 - s)}) {
          if (t > 0.0) {
            const double r = std::sqrt(p.mu * t);
            seeds.push_back({r, 0.0});
            seeds.push_back({-r, 0.0});
          }
        }
      }
      break;
    }
    case Model::Molar: {
      const double A = p.param("A"), g = p.param("gamma");
      if (A < 0.0) {
        const double r = std::sqrt(p.mu * (-A));
        seeds.push_back({r, 0.0});
        seeds.push_back({-r, 0.0});
        seeds.push_back({0.0, r});
        seeds.push_back({0.0, -r});
        const double td = std::sqrt(p.mu * (-A) / (1.0 + g));
        for (double s1 : {1.0, -1.0})
          for (double s2 : {1.0, -1.0}) seeds.push_back({s1 * td, s2 * td});
      }
      break;
    }
  }
  const double scale = 1.0 + std::sqrt(p.mu);
  std::vector<FixedPoint> out;
  for (auto& s : seeds) {
    auto fp = detail::make_point(p, s);
    bool dup = false;
    for (const auto& o : out)
      if (detail::near_duplicate(o, fp.location, scale)) dup = true;
    if (!dup) out.push_back(std::move(fp));
  }
  return out;
}

// Excitation energies about a stable point, recomputed from the Hessian.
inline std::vector<double> excitation_energies(const CatastrophePotential& p,
                                               const FixedPoint& fp) {
  if (fp.marginal())
    throw MarginalPointError("excitation energies at a marginal point",
                             fp.hessian_eigenvalues.empty()
                                 ? 0.0
                                 : fp.hessian_eigenvalues.back());
  if (!fp.stable())
    throw UnstablePointError("excitation energies requested at an unstable point");
  std::span<const double> ys(fp.location.data(), fp.dim);
  const auto h = hessian(p, ys);
  if (fp.dim == 1) return {std::sqrt(h[0])};
  const auto hm = detail::hessian_modes(h, fp.location);
  if (hm.eig_radial < 0.0 || hm.eig_transverse < 0.0)
    throw UnstablePointError("negative Hessian eigenvalue");
  return {std::sqrt(hm.eig_radial), std::sqrt(hm.eig_transverse)};
}

// Correlation-length and dynamical exponents extracted from the A > 0 side
// of the cusp: epsilon ~ A^{z nu} by log-log fit, nu fixed by the
// correlation length xi = epsilon^{-1/2}.
struct CriticalExponents {
  double nu = 0.0;
  double z = 0.0;
  std::function<double(double)> xi;  // xi(epsilon) = epsilon^{-1/2}
};

inline CriticalExponents cusp_critical_exponents(double mu = 1.0) {
  const std::array<double, 4> As{1e-2, 1e-3, 1e-4, 1e-5};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double A : As) {
    auto fps = find_fixed_points(make_cusp(mu, A));
    double eps = 0.0;
    for (const auto& fp : fps)
      if (fp.stable()) eps = fp.excitation_energies[0];
    const double x = std::log(A), y = std::log(eps);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(As.size());
  const double z_nu = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CriticalExponents ce;
  ce.nu = z_nu / 2.0;  // xi = eps^{-1/2} ~ A^{-z nu / 2}
  ce.z = z_nu / ce.nu;
  ce.xi = [](double eps) { return 1.0 / std::sqrt(eps); };
  return ce;
}

}  // namespace qcat
