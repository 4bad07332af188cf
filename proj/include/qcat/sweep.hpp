#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qcat/finite_mu.hpp"
#include "qcat/lobes.hpp"
#include "qcat/parallel.hpp"
#include "qcat/potential.hpp"

namespace qcat {

enum class Method { Asymptotic, Numeric };

inline const char* method_name(Method m) {
  return m == Method::Asymptotic ? "asymptotic" : "numeric";
}

struct SweepPoint {
  double param = 0.0;
  double entropy_bits = 0.0;
  Method method = Method::Asymptotic;
};

struct SweepResult {
  Model model = Model::Cusp;
  double mu = 0.0;  // +inf for asymptotic sweeps
  std::string param_name;
  std::vector<SweepPoint> points;
};

struct SweepSpec {
  CatastrophePotential base;
  std::string param_name;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;
  bool asymptotic = true;  // mu -> infinity analysis vs numeric at base.mu
};

// Entropy across a parameter grid.  Points are independent and evaluated in
// parallel; any point-level failure aborts the sweep and names the value.
inline SweepResult sweep_entropy(const SweepSpec& spec,
                                 const FiniteMuOptions& numeric_opts = {}) {
  if (spec.steps < 2) throw ContractError("sweep_entropy: steps must be >= 2");
  if (!(spec.max > spec.min))
    throw ContractError("sweep_entropy: empty parameter range");
  SweepResult out;
  out.model = spec.base.model;
  out.mu = spec.asymptotic ? std::numeric_limits<double>::infinity()
                           : spec.base.mu;
  out.param_name = spec.param_name;
  out.points.resize(spec.steps);
  const double dx = (spec.max - spec.min) / (spec.steps - 1);
  parallel_for(spec.steps, [&](int i) {
    const double x = spec.min + i * dx;
    try {
      const auto p = with_param(spec.base, spec.param_name, x);
      const double s = spec.asymptotic ? asymptotic_entropy(p)
                                       : finite_mu_entropy(p, numeric_opts);
      out.points[i] = {x, s,
                       spec.asymptotic ? Method::Asymptotic : Method::Numeric};
    } catch (const Error& e) {
      throw SweepPointError(std::string("sweep aborted at ") + spec.param_name +
                                " = " + std::to_string(x) + ": " + e.what(),
                            x);
    }
  });
  return out;
}

struct Peak {
  double param_star = 0.0;
  double entropy_star = 0.0;
};

namespace detail {

// Golden-section maximization on a bracket where f is unimodal.
inline Peak golden_max(const std::function<double(double)>& f, double a,
                       double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? Peak{c, fc} : Peak{d, fd};
}

}  // namespace detail

// Coarse argmax of the sweep refined by zoom scans and a final
// golden-section pass on fresh evaluations.  The zoom stage re-scans the
// argmax neighborhood so that narrow level-crossing spikes are tracked into
// a bracket where the curve is genuinely unimodal.
inline Peak locate_peak(const SweepResult& sr,
                        const std::function<double(double)>& fresh_eval,
                        double param_tol = 1e-4) {
  if (sr.points.size() < 5)
    throw ContractError("locate_peak: need at least 5 sweep points");
  for (const auto& pt : sr.points)
    if (std::isinf(pt.entropy_bits))
      throw ContractError("locate_peak: sweep contains infinite entries "
                          "(asymptotic critical points)");
  size_t best = 0;
  for (size_t i = 1; i < sr.points.size(); ++i)
    if (sr.points[i].entropy_bits > sr.points[best].entropy_bits) best = i;
  if (best == 0 || best + 1 == sr.points.size())
    throw PeakNotBracketedError(
        "locate_peak: maximum at the sweep boundary (param = " +
        std::to_string(sr.points[best].param) + ")");

  double a = sr.points[best - 1].param;
  double b = sr.points[best + 1].param;
  double fx = sr.points[best].entropy_bits;
  double x = sr.points[best].param;
  // zoom scans: subdivide the bracket until it is tight
  const int zoom_points = 12;
  while (b - a > 32 * param_tol) {
    double za = a, zb = b;
    double zbest_x = x, zbest_f = fx;
    int ib = -1;
    for (int i = 0; i <= zoom_points; ++i) {
      const double xi = za + (zb - za) * i / zoom_points;
      const double fi = fresh_eval(xi);
      if (fi > zbest_f) {
        zbest_f = fi;
        zbest_x = xi;
        ib = i;
      }
    }
    const double step = (zb - za) / zoom_points;
    if (ib < 0) {
      // previous best still wins; shrink around it
      a = std::max(za, zbest_x - step);
      b = std::min(zb, zbest_x + step);
    } else {
      a = std::max(za, zbest_x - step);
      b = std::min(zb, zbest_x + step);
    }
    x = zbest_x;
    fx = zbest_f;
  }
  return detail::golden_max(fresh_eval, a, b, param_tol);
}

enum class FitForm { Plain, Offset };

struct PowerLawFit {
  FitForm form = FitForm::Plain;
  double c0 = 0.0;
  double c1 = 0.0;  // |x - x_c| = |c0| mu^{-c1}
  double residual_rms = 0.0;
  std::vector<double> mu_values;
};

// Least squares of log|x - x_c| against log mu.  c1 is minus the log-log
// slope; c0 carries the common sign of (x - x_c).
inline PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& pts,
                                 FitForm form, double x_c = 0.0) {
  if (pts.size() < 3) throw ContractError("fit_power_law: need >= 3 points");
  int sign = 0;
  for (auto& [mu, x] : pts) {
    const double dxc = x - x_c;
    if (dxc == 0.0)
      throw ContractError("fit_power_law: point exactly at x_c");
    const int s = dxc > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign)
      throw NonMonotoneApproachError(
          "fit_power_law: sign of (x - x_c) not uniform across points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(pts.size());
  for (auto& [mu, x] : pts) {
    const double lx = std::log(mu), ly = std::log(std::abs(x - x_c));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  PowerLawFit fit;
  fit.form = form;
  fit.c1 = -slope;
  fit.c0 = sign * std::exp(intercept);
  double ss = 0.0;
  for (auto& [mu, x] : pts) {
    const double pred = intercept + slope * std::log(mu);
    const double r = std::log(std::abs(x - x_c)) - pred;
    ss += r * r;
    fit.mu_values.push_back(mu);
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace qcat
