#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "qcat/density_matrix.hpp"
#include "qcat/fock.hpp"
#include "qcat/grid.hpp"
#include "qcat/solver_1d.hpp"
#include "qcat/solver_2d.hpp"

namespace qcat {

// Fixed discretization for one finite-mu entropy evaluation.  Peak hunts
// freeze one of these so that entropy differences between nearby parameter
// values are not contaminated by refinement-level switching.
struct Discretization {
  double half_width = 0.0;  // symmetric domain [-L, L] (per axis in 2D)
  int n_points = 0;         // grid points (per axis in 2D)
  int n_max = 0;            // Fock truncation (1D pipeline only)
};

struct FiniteMuOptions {
  double tol = 1e-4;  // entropy drift between refinement levels
  int max_levels = 6;
  int max_domain_growth = 5;
  std::optional<Discretization> fixed;  // bypass auto-refinement
  Solve2DOptions solver2d;

  FiniteMuOptions() {
    solver2d.probe_gap = false;  // pipeline consumers only need the state
  }
};

struct FiniteMuResult {
  double entropy_bits = 0.0;
  Discretization used;
  std::vector<double> history;  // entropy per refinement level
};

namespace detail {

inline double largest_lobe_reach(const CatastrophePotential& p, double* eps_soft) {
  double reach = 0.0, soft = 1.0;
  for (const auto& fp : find_fixed_points(p)) {
    reach = std::max({reach, std::abs(fp.location[0]), std::abs(fp.location[1])});
    if (fp.stable())
      for (double e : fp.excitation_energies) soft = std::min(soft, e);
  }
  if (eps_soft) *eps_soft = soft;
  return reach;
}

// One 1D pipeline evaluation at fixed discretization: grid solve -> Fock
// projection -> beam splitter -> RDM -> entropy.  Grows n_max in place on
// truncation failures.
inline double entropy_1d_at(const CatastrophePotential& p, Discretization& d) {
  const Grid1D g = make_symmetric_grid(d.half_width, d.n_points);
  const auto ground = solve_1d_ground_state(p, g);
  Eigen::VectorXd c;
  for (;;) {
    try {
      c = fock_coefficients(ground.psi, g, d.n_max);
      break;
    } catch (const TruncationError&) {
      if (d.n_max > 4000) throw;
      d.n_max = static_cast<int>(std::ceil(d.n_max * 1.5));
    }
  }
  const auto st = beam_splitter_rotate(c, p.theta);
  return von_neumann_entropy(reduced_density_matrix(st, 2));
}

inline double entropy_2d_at(const CatastrophePotential& p,
                            const Discretization& d, const Solve2DOptions& so) {
  const Grid1D g = make_symmetric_grid(d.half_width, d.n_points);
  const auto ground = solve_2d_ground_state(p, g, g, so);
  return von_neumann_entropy(reduced_density_matrix(ground.state, 2));
}

inline Discretization initial_discretization(const CatastrophePotential& p) {
  double eps_soft = 1.0;
  const double reach = largest_lobe_reach(p, &eps_soft);
  Discretization d;
  d.half_width = reach + 5.0 / std::sqrt(std::clamp(eps_soft, 0.15, 1.0)) + 3.0;
  if (p.dim() == 1) {
    d.n_points = 1024;
    d.n_max = static_cast<int>(std::ceil(4.0 * std::max(reach * reach, 10.0)));
  } else {
    d.n_points = 128;
  }
  return d;
}

}  // namespace detail

// Exact numerical ground-state entanglement at finite mu.  1D models run the
// separable collective-mode pipeline; the molar model runs the 2D grid
// solver.  The discretization refines until the entropy moves by less than
// opts.tol between levels.
inline FiniteMuResult finite_mu_entropy_detailed(const CatastrophePotential& p,
                                                 const FiniteMuOptions& opts = {}) {
  const bool one_d = p.dim() == 1;
  FiniteMuResult out;

  if (opts.fixed) {
    Discretization d = *opts.fixed;
    out.entropy_bits =
        one_d ? detail::entropy_1d_at(p, d) : detail::entropy_2d_at(p, d, opts.solver2d);
    out.used = d;
    out.history = {out.entropy_bits};
    return out;
  }

  Discretization d = detail::initial_discretization(p);
  double prev = 0.0;
  for (int level = 0; level < opts.max_levels; ++level) {
    double s = 0.0;
    int growth = 0;
    for (;;) {
      try {
        s = one_d ? detail::entropy_1d_at(p, d)
                  : detail::entropy_2d_at(p, d, opts.solver2d);
        break;
      } catch (const DomainTooSmallError&) {
        if (++growth > opts.max_domain_growth) throw;
        d.half_width *= 1.3;
      }
    }
    out.history.push_back(s);
    out.used = d;
    if (level > 0 && std::abs(s - prev) < opts.tol) {
      out.entropy_bits = s;
      return out;
    }
    prev = s;
    d.n_points = one_d ? static_cast<int>(std::ceil(d.n_points * 1.5))
                       : static_cast<int>(std::ceil(d.n_points * 1.4));
  }
  throw ConvergenceError("finite_mu_entropy: refinement did not converge",
                         out.history);
}

inline double finite_mu_entropy(const CatastrophePotential& p,
                                const FiniteMuOptions& opts = {}) {
  return finite_mu_entropy_detailed(p, opts).entropy_bits;
}

}  // namespace qcat
