#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "qcat/finite_mu.hpp"
#include "qcat/sweep.hpp"

namespace qcat {

struct PeakAtMu {
  double mu = 0.0;
  Peak peak;
};

struct ScalingStudy {
  std::vector<PeakAtMu> peaks;
  std::optional<PowerLawFit> fit;
};

namespace detail {

// Entropy evaluator at fixed discretization, resolved once per hunt so that
// nearby parameter values see a smooth curve.
inline std::function<double(double)> frozen_eval(const CatastrophePotential& base,
                                                 const std::string& param,
                                                 double resolve_at,
                                                 const FiniteMuOptions& opts) {
  auto probe = finite_mu_entropy_detailed(with_param(base, param, resolve_at), opts);
  const Discretization disc = probe.used;
  return [base, param, disc, opts](double x) {
    FiniteMuOptions o = opts;
    o.fixed = disc;
    return finite_mu_entropy(with_param(base, param, x), o);
  };
}

inline SweepResult scan(const std::function<double(double)>& f, double lo,
                        double hi, int steps, const CatastrophePotential& base,
                        const std::string& param) {
  SweepResult sr;
  sr.model = base.model;
  sr.mu = base.mu;
  sr.param_name = param;
  sr.points.resize(steps);
  parallel_for(steps, [&](int i) {
    const double x = lo + (hi - lo) * i / (steps - 1);
    sr.points[i] = {x, f(x), Method::Numeric};
  });
  return sr;
}

// Rightmost interior local maximum of the scan, if any.
inline std::optional<size_t> rightmost_local_max(const SweepResult& sr) {
  for (size_t i = sr.points.size() - 2; i >= 1; --i) {
    if (sr.points[i].entropy_bits > sr.points[i - 1].entropy_bits &&
        sr.points[i].entropy_bits > sr.points[i + 1].entropy_bits)
      return i;
    if (i == 1) break;
  }
  return std::nullopt;
}

inline Peak refine_bracket(const SweepResult& sr, size_t i,
                           const std::function<double(double)>& f,
                           double tol) {
  SweepResult local;
  local.model = sr.model;
  local.mu = sr.mu;
  local.param_name = sr.param_name;
  for (size_t j = (i >= 2 ? i - 2 : 0);
       j < std::min(sr.points.size(), i + 3); ++j)
    local.points.push_back(sr.points[j]);
  while (local.points.size() < 5) {  // locate_peak wants >= 5 points
    const auto& a = local.points.front();
    const auto& b = local.points.back();
    const double pad = (b.param - a.param) / local.points.size();
    local.points.insert(local.points.begin(),
                        {a.param - pad, f(a.param - pad), a.method});
    local.points.push_back({b.param + pad, f(b.param + pad), b.method});
  }
  return locate_peak(local, f, tol);
}

}  // namespace detail

// Finite-mu entanglement maximum of the cusp near the bifurcation.  The
// search window excludes the large-|A| regime where the single-lobe entropy
// rises again toward its epsilon -> infinity divergence.
inline Peak cusp_peak(double mu, const FiniteMuOptions& opts = {},
                      double window_lo = -0.6, double window_hi = -0.02) {
  auto base = make_cusp(mu, -0.3);
  auto f = detail::frozen_eval(base, "A", 0.5 * (window_lo + window_hi), opts);
  auto sr = detail::scan(f, window_lo, window_hi, 30, base, "A");
  return locate_peak(sr, f, 1e-4);
}

// Butterfly entanglement maximum at the level crossing.  For small mu the
// peak is a smooth bump visible in a coarse scan; for larger mu it narrows
// into a spike that the scan cannot see, in which case the entropy crash on
// its right flank is bisected first and the spike is then scanned locally.
inline Peak butterfly_peak(double mu, const FiniteMuOptions& opts = {}) {
  const double A4 = -4.0 / std::sqrt(3.0);
  auto base = make_butterfly(mu, 0.9, A4);
  const double lo = 1.0 - std::min(0.45, 3.0 / mu);
  const double hi = 1.0 + 0.01;
  auto f = detail::frozen_eval(base, "A2", 0.5 * (lo + 1.0), opts);
  auto sr = detail::scan(f, lo, hi, 60, base, "A2");

  if (auto i = detail::rightmost_local_max(sr)) {
    // guard against plateau noise: accept only a clearly developed maximum
    const double smax = sr.points[*i].entropy_bits;
    double before = smax, after = smax;
    if (*i >= 2) before = sr.points[*i - 2].entropy_bits;
    if (*i + 2 < sr.points.size()) after = sr.points[*i + 2].entropy_bits;
    if (smax > before + 1e-4 || smax > after + 1e-4)
      return detail::refine_bracket(sr, *i, f, 3e-6);
  }

  // no local max resolved: bisect the entropy crash S ~ 1.2 -> ~0
  double a = lo, b = hi;
  for (size_t i = 0; i + 1 < sr.points.size(); ++i)
    if (sr.points[i].entropy_bits > 0.6 && sr.points[i + 1].entropy_bits < 0.6) {
      a = sr.points[i].param;
      b = sr.points[i + 1].param;
      break;
    }
  while (b - a > 1e-7) {
    const double m = 0.5 * (a + b);
    (f(m) > 0.6 ? a : b) = m;
  }
  // scan leftward from the crash for the apex, widening if needed
  for (double width = 2e-3; width <= 0.064; width *= 2.0) {
    SweepResult local;
    local.model = base.model;
    local.mu = mu;
    local.param_name = "A2";
    const int steps = 120;
    local.points.resize(steps);
    parallel_for(steps, [&](int i) {
      const double x = b - width + width * 1.02 * i / (steps - 1);
      local.points[i] = {x, f(x), Method::Numeric};
    });
    try {
      return locate_peak(local, f, 3e-6);
    } catch (const PeakNotBracketedError&) {
      continue;  // apex left of the window; widen
    }
  }
  throw PeakNotBracketedError("butterfly_peak: no interior maximum near the "
                              "crossing at mu = " + std::to_string(mu));
}

// Molar gamma* at fixed mu (2D solves; the expensive hunt).  Near the window
// floor the transverse mode softens and Lanczos needs a longer run at a
// residual tolerance matched to the entropy accuracy actually required.
inline Peak molar_peak(double mu, const FiniteMuOptions& opts_in = {}) {
  FiniteMuOptions opts = opts_in;
  opts.solver2d.lanczos.max_iter = 480;
  opts.solver2d.lanczos.tol = 1e-8;
  const double est = 4.93e4 * std::pow(mu, -4.09);  // only to size the window
  const double lo = 1.0 + std::clamp(est / 8.0, 0.004, 0.5);
  const double hi = 1.0 + std::clamp(est * 2.5, 0.08, 9.0);
  auto base = make_molar(mu, -1.0, 2.0);
  auto f = detail::frozen_eval(base, "gamma", lo, opts);
  // log-spaced coarse scan
  SweepResult sr;
  sr.model = base.model;
  sr.mu = mu;
  sr.param_name = "gamma";
  const int steps = 14;
  sr.points.resize(steps);
  parallel_for(steps, [&](int i) {
    const double x =
        1.0 + (lo - 1.0) * std::pow((hi - 1.0) / (lo - 1.0), double(i) / (steps - 1));
    sr.points[i] = {x, f(x), Method::Numeric};
  });
  size_t best = 0;
  for (size_t i = 1; i < sr.points.size(); ++i)
    if (sr.points[i].entropy_bits > sr.points[best].entropy_bits) best = i;
  if (best == 0 || best + 1 == sr.points.size())
    throw PeakNotBracketedError("molar_peak: maximum at the window boundary");
  return detail::golden_max(f, sr.points[best - 1].param,
                            sr.points[best + 1].param,
                            1e-3 * (sr.points[best + 1].param - 1.0));
}

inline ScalingStudy cusp_scaling_study(const std::vector<double>& mus,
                                       const FiniteMuOptions& opts = {}) {
  ScalingStudy out;
  std::vector<std::pair<double, double>> pts;
  for (double mu : mus) {
    auto p = cusp_peak(mu, opts);
    out.peaks.push_back({mu, p});
    pts.push_back({mu, p.param_star});
  }
  out.fit = fit_power_law(pts, FitForm::Plain, 0.0);
  return out;
}

inline ScalingStudy butterfly_scaling_study(const std::vector<double>& mus,
                                            const FiniteMuOptions& opts = {}) {
  ScalingStudy out;
  std::vector<std::pair<double, double>> pts;
  for (double mu : mus) {
    auto p = butterfly_peak(mu, opts);
    out.peaks.push_back({mu, p});
    pts.push_back({mu, p.param_star});
  }
  out.fit = fit_power_law(pts, FitForm::Offset, 1.0);
  return out;
}

inline ScalingStudy molar_scaling_study(const std::vector<double>& mus,
                                        const FiniteMuOptions& opts = {}) {
  ScalingStudy out;
  std::vector<std::pair<double, double>> pts;
  for (double mu : mus) {
    auto p = molar_peak(mu, opts);
    out.peaks.push_back({mu, p});
    pts.push_back({mu, p.param_star});
  }
  if (pts.size() >= 3) out.fit = fit_power_law(pts, FitForm::Offset, 1.0);
  return out;
}

}  // namespace qcat
