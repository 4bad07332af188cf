#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qcat/fixed_points.hpp"
#include "qcat/gaussian_entropy.hpp"
#include "qcat/potential.hpp"

namespace qcat {

// One localized Gaussian component of the macroscopic ground state.
// kept/traced are the projections of the lobe center onto the kept and
// traced coordinates of the entanglement partition (bare x modes for the 1D
// models, y1/y2 for the molar).
struct GaussianLobe {
  std::array<double, 2> center{0.0, 0.0};
  int dim = 1;
  std::vector<double> epsilons;
  double mode_angle = 0.0;
  double ratio = kInfEntropy;   // 2*alpha/beta
  double entropy_bits = 0.0;    // single-lobe entanglement
  double kept = 0.0;            // center projected on the kept coordinate
  double traced = 0.0;          // center projected on the traced coordinate
};

enum class SuperpositionKind { Coherent, Incoherent };

struct LobeSet {
  std::vector<GaussianLobe> lobes;
  std::vector<double> weights;
  SuperpositionKind kind = SuperpositionKind::Coherent;
  bool pairwise_orthogonal = true;  // all kept projections distinct
};

namespace detail {

inline double lg(double x) { return std::log2(x); }

// Distinct-coordinate test for lobe projections.  Centers grow as sqrt(mu),
// so distinct projections mean vanishing overlap in the macroscopic limit.
inline bool same_projection(double a, double b, double scale) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, scale);
}

inline int group_index(std::vector<double>& reps, double v, double scale) {
  for (size_t i = 0; i < reps.size(); ++i)
    if (same_projection(reps[i], v, scale)) return static_cast<int>(i);
  reps.push_back(v);
  return static_cast<int>(reps.size()) - 1;
}

inline double entropy_of_probs(const std::vector<double>& ps) {
  double s = 0.0;
  for (double p : ps)
    if (p > 1e-14) s -= p * lg(p);
  return s;
}

// Eigenvalues of the macroscopic skeleton RDM.  Lobes are reduced to points
// (kept, traced) with weights; a coherent superposition produces cross terms
// between lobes that share a traced projection, an incoherent mixture only
// accumulates weight per kept projection.  Connected components of size <= 2
// use closed forms so that the textbook cases come out exact.
inline double skeleton_mixing_entropy(const LobeSet& ls, double scale) {
  const size_t n = ls.lobes.size();
  std::vector<double> kept_reps, traced_reps;
  std::vector<int> kg(n), tg(n);
  for (size_t i = 0; i < n; ++i) {
    kg[i] = group_index(kept_reps, ls.lobes[i].kept, scale);
    tg[i] = group_index(traced_reps, ls.lobes[i].traced, scale);
  }
  const int nk = static_cast<int>(kept_reps.size());

  if (ls.kind == SuperpositionKind::Incoherent) {
    std::vector<double> w(nk, 0.0);
    for (size_t i = 0; i < n; ++i) w[kg[i]] += ls.weights[i];
    return entropy_of_probs(w);
  }

  // Coherent: rho = sum_g v_g v_g^T with v_g[a] = sqrt(lambda_i) for the
  // lobe i in traced-group g sitting at kept position a.
  const int nt = static_cast<int>(traced_reps.size());
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(nk, nt);
  for (size_t i = 0; i < n; ++i)
    V(kg[i], tg[i]) += std::sqrt(ls.weights[i]);

  // union-find over kept positions coupled through a shared traced group
  std::vector<int> parent(nk);
  for (int i = 0; i < nk; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int g = 0; g < nt; ++g) {
    int first = -1;
    for (int a = 0; a < nk; ++a)
      if (V(a, g) != 0.0) {
        if (first < 0)
          first = a;
        else
          parent[find(a)] = find(first);
      }
  }
  std::vector<std::vector<int>> comps(nk);
  for (int a = 0; a < nk; ++a) comps[find(a)].push_back(a);

  std::vector<double> eigs;
  for (const auto& comp : comps) {
    if (comp.empty()) continue;
    if (comp.size() == 1) {
      const int a = comp[0];
      eigs.push_back(V.row(a).squaredNorm());
    } else if (comp.size() == 2) {
      const int a = comp[0], b = comp[1];
      const double raa = V.row(a).squaredNorm();
      const double rbb = V.row(b).squaredNorm();
      const double rab = V.row(a).dot(V.row(b));
      const double m = 0.5 * (raa + rbb);
      const double r = std::hypot(0.5 * (raa - rbb), rab);
      eigs.push_back(m + r);
      eigs.push_back(m - r);
    } else {
      Eigen::MatrixXd block(comp.size(), V.cols());
      for (size_t i = 0; i < comp.size(); ++i) block.row(i) = V.row(comp[i]);
      Eigen::MatrixXd rho = block * block.transpose();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho,
                                                        Eigen::EigenvaluesOnly);
      for (int i = 0; i < es.eigenvalues().size(); ++i)
        eigs.push_back(es.eigenvalues()[i]);
    }
  }
  return entropy_of_probs(eigs);
}

}  // namespace detail

// Ground lobes: stable fixed points of minimal well energy (relative
// tolerance kWellDegeneracyRelTol), equal weights, coherent superposition.
// If the minimal-energy set contains a marginal point the model is critical
// there and the lobe carries infinite entropy.
inline LobeSet select_ground_lobes(const CatastrophePotential& p,
                                   const std::vector<FixedPoint>& fps) {
  std::vector<const FixedPoint*> cands;
  for (const auto& fp : fps)
    if (fp.stable() || fp.marginal()) cands.push_back(&fp);
  if (cands.empty())
    throw InvalidModelError("no stable fixed point: ground state undefined");

  double vmin = cands.front()->well_energy;
  for (auto* fp : cands) vmin = std::min(vmin, fp->well_energy);
  std::vector<const FixedPoint*> ground;
  for (auto* fp : cands)
    if (std::abs(fp->well_energy - vmin) <=
        kWellDegeneracyRelTol * std::max(1.0, std::abs(vmin)))
      ground.push_back(fp);

  const bool is_molar = p.model == Model::Molar;
  const double c = std::cos(p.theta / 2.0), s = std::sin(p.theta / 2.0);

  LobeSet ls;
  ls.kind = SuperpositionKind::Coherent;
  for (auto* fp : ground) {
    GaussianLobe lobe;
    lobe.center = fp->location;
    lobe.dim = fp->dim;
    lobe.mode_angle = fp->normal_mode_angle;
    if (is_molar) {
      lobe.kept = fp->location[0];
      lobe.traced = fp->location[1];
    } else {
      lobe.kept = c * fp->location[0];
      lobe.traced = s * fp->location[0];
    }
    if (fp->marginal()) {
      lobe.ratio = 1.0;  // epsilon -> 0: critical entanglement
      lobe.entropy_bits = kInfEntropy;
    } else if (is_molar) {
      lobe.epsilons = fp->excitation_energies;
      if (lobe.mode_angle < 1e-9) {
        // axes-aligned product lobe
        lobe.ratio = kInfEntropy;
        lobe.entropy_bits = 0.0;
      } else {
        const double k = lobe.epsilons[1] / lobe.epsilons[0];
        lobe.ratio = detail::ratio_diagonal_from_k(k);
        lobe.entropy_bits = entropy_from_ratio(lobe.ratio);
      }
    } else {
      lobe.epsilons = fp->excitation_energies;
      lobe.ratio = ratio_general_theta(lobe.epsilons[0], p.theta);
      lobe.entropy_bits = entropy_from_ratio(lobe.ratio);
    }
    ls.lobes.push_back(std::move(lobe));
  }
  const double w = 1.0 / static_cast<double>(ls.lobes.size());
  ls.weights.assign(ls.lobes.size(), w);

  const double scale = 1.0 + std::sqrt(p.mu);
  ls.pairwise_orthogonal = true;
  for (size_t i = 0; i < ls.lobes.size(); ++i)
    for (size_t j = i + 1; j < ls.lobes.size(); ++j)
      if (detail::same_projection(ls.lobes[i].kept, ls.lobes[j].kept, scale))
        ls.pairwise_orthogonal = false;
  return ls;
}

// Total entropy of the lobe set: macroscopic mixing term from the skeleton
// RDM plus the weighted single-lobe entropies.  For all-orthogonal lobes
// this is sum(lambda S_i) - sum(lambda lg lambda) exactly.
inline double combine_lobe_entropy(const LobeSet& ls) {
  if (ls.lobes.empty()) throw ContractError("combine_lobe_entropy: empty lobe set");
  if (ls.lobes.size() != ls.weights.size())
    throw ContractError("combine_lobe_entropy: weights/lobes size mismatch");
  double wsum = 0.0;
  for (double w : ls.weights) {
    if (!(w > 0.0)) throw ContractError("combine_lobe_entropy: weights must be > 0");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-10)
    throw ContractError("combine_lobe_entropy: weights must sum to 1");

  double scale = 1.0;
  for (const auto& l : ls.lobes)
    scale = std::max({scale, std::abs(l.kept), std::abs(l.traced)});
  bool all_distinct = true;
  for (size_t i = 0; i < ls.lobes.size(); ++i)
    for (size_t j = i + 1; j < ls.lobes.size(); ++j) {
      const bool same_kept =
          detail::same_projection(ls.lobes[i].kept, ls.lobes[j].kept, scale);
      if (same_kept) all_distinct = false;
      if (same_kept && detail::same_projection(ls.lobes[i].traced,
                                               ls.lobes[j].traced, scale))
        throw ContractError("combine_lobe_entropy: two lobes at the same "
                            "macroscopic position");
    }
  if (all_distinct != ls.pairwise_orthogonal)
    throw ContractError("combine_lobe_entropy: pairwise_orthogonal flag "
                        "inconsistent with lobe geometry");

  double local = 0.0;
  for (size_t i = 0; i < ls.lobes.size(); ++i) {
    if (std::isinf(ls.lobes[i].entropy_bits)) return kInfEntropy;
    local += ls.weights[i] * ls.lobes[i].entropy_bits;
  }
  return detail::skeleton_mixing_entropy(ls, scale) + local;
}

// Full asymptotic pipeline: fixed points -> ground lobes -> combination.
inline double asymptotic_entropy(const CatastrophePotential& p) {
  if (!check_bounded_below(p))
    throw InvalidModelError("potential not bounded below");
  auto fps = find_fixed_points(p);
  auto lobes = select_ground_lobes(p, fps);
  return combine_lobe_entropy(lobes);
}

}  // namespace qcat
