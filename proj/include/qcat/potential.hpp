#pragma once

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <string>

#include "qcat/errors.hpp"

namespace qcat {

enum class Model { Cusp, Butterfly, Molar };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::Cusp: return "cusp";
    case Model::Butterfly: return "butterfly";
    case Model::Molar: return "molar";
  }
  return "?";
}

inline int model_dim(Model m) { return m == Model::Molar ? 2 : 1; }

// Rescaled catastrophe potential: quartic (cusp), sextic (butterfly), or the
// 2D quartic family with coupling modulus gamma (molar).  mu is the
// macroscopy parameter; theta is the collective/bare mode mixing angle and
// applies to the 1D models only.
struct CatastrophePotential {
  Model model = Model::Cusp;
  double mu = 1.0;
  std::map<std::string, double> params;
  double theta = std::numbers::pi / 2;

  double param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end())
      throw ContractError("missing control parameter '" + key + "' for model " +
                          model_name(model));
    return it->second;
  }

  int dim() const { return model_dim(model); }
};

inline void validate(const CatastrophePotential& p) {
  if (!(p.mu > 0.0)) throw ContractError("mu must be positive");
  switch (p.model) {
    case Model::Cusp:
      p.param("A");
      break;
    case Model::Butterfly:
      p.param("A2");
      p.param("A4");
      break;
    case Model::Molar:
      p.param("A");
      if (!(p.param("gamma") > -1.0))
        throw ContractError("molar requires gamma > -1 (quartic form bounded below)");
      break;
  }
  if (p.dim() == 1 && !(p.theta > 0.0 && p.theta < std::numbers::pi) &&
      p.theta != 0.0 && p.theta != std::numbers::pi)
    throw ContractError("theta outside [0, pi]");
}

inline CatastrophePotential make_cusp(double mu, double A,
                                      double theta = std::numbers::pi / 2) {
  CatastrophePotential p{Model::Cusp, mu, {{"A", A}}, theta};
  validate(p);
  return p;
}

inline CatastrophePotential make_butterfly(double mu, double A2, double A4,
                                           double theta = std::numbers::pi / 2) {
  CatastrophePotential p{Model::Butterfly, mu, {{"A2", A2}, {"A4", A4}}, theta};
  validate(p);
  return p;
}

inline CatastrophePotential make_molar(double mu, double A, double gamma) {
  CatastrophePotential p{Model::Molar, mu, {{"A", A}, {"gamma", gamma}}, 0.0};
  validate(p);
  return p;
}

// Copy with one control parameter replaced (sweep helper).
inline CatastrophePotential with_param(CatastrophePotential p,
                                       const std::string& key, double value) {
  if (p.params.find(key) == p.params.end())
    throw ContractError("model " + std::string(model_name(p.model)) +
                        " has no parameter '" + key + "'");
  p.params[key] = value;
  validate(p);
  return p;
}

// ---------------------------------------------------------------------------
// Potential evaluation and derivatives
// ---------------------------------------------------------------------------

inline double eval_potential(const CatastrophePotential& p,
                             std::span<const double> y) {
  if (static_cast<int>(y.size()) != p.dim())
    throw ContractError("eval_potential: dimension mismatch");
  switch (p.model) {
    case Model::Cusp: {
      const double A = p.param("A");
      const double y1 = y[0], y2 = y1 * y1;
      return y2 * y2 / (4.0 * p.mu) + 0.5 * A * y2;
    }
    case Model::Butterfly: {
      const double A2 = p.param("A2"), A4 = p.param("A4");
      const double y2 = y[0] * y[0];
      return 0.5 * A2 * y2 + A4 * y2 * y2 / (4.0 * p.mu) +
             y2 * y2 * y2 / (6.0 * p.mu * p.mu);
    }
    case Model::Molar: {
      const double A = p.param("A"), g = p.param("gamma");
      const double u = y[0] * y[0], v = y[1] * y[1];
      return 0.5 * A * (u + v) + (u * u + 2.0 * g * u * v + v * v) / (4.0 * p.mu);
    }
  }
  throw ContractError("unknown model");
}

inline double eval_potential(const CatastrophePotential& p, double y1) {
  const double y[1] = {y1};
  return eval_potential(p, std::span<const double>(y, 1));
}

inline double eval_potential(const CatastrophePotential& p, double y1, double y2) {
  const double y[2] = {y1, y2};
  return eval_potential(p, std::span<const double>(y, 2));
}

inline std::array<double, 2> gradient(const CatastrophePotential& p,
                                      std::span<const double> y) {
  if (static_cast<int>(y.size()) != p.dim())
    throw ContractError("gradient: dimension mismatch");
  switch (p.model) {
    case Model::Cusp: {
      const double A = p.param("A"), y1 = y[0];
      return {y1 * y1 * y1 / p.mu + A * y1, 0.0};
    }
    case Model::Butterfly: {
      const double A2 = p.param("A2"), A4 = p.param("A4"), y1 = y[0];
      const double t = y1 * y1 / p.mu;
      return {y1 * (A2 + A4 * t + t * t), 0.0};
    }
    case Model::Molar: {
      const double A = p.param("A"), g = p.param("gamma");
      const double y1 = y[0], y2 = y[1];
      return {A * y1 + (y1 * y1 * y1 + g * y1 * y2 * y2) / p.mu,
              A * y2 + (y2 * y2 * y2 + g * y1 * y1 * y2) / p.mu};
    }
  }
  throw ContractError("unknown model");
}

// Hessian as {h11, h22, h12}; 1D models use h11 only.
inline std::array<double, 3> hessian(const CatastrophePotential& p,
                                     std::span<const double> y) {
  if (static_cast<int>(y.size()) != p.dim())
    throw ContractError("hessian: dimension mismatch");
  switch (p.model) {
    case Model::Cusp: {
      const double A = p.param("A"), y1 = y[0];
      return {3.0 * y1 * y1 / p.mu + A, 0.0, 0.0};
    }
    case Model::Butterfly: {
      const double A2 = p.param("A2"), A4 = p.param("A4"), y1 = y[0];
      const double t = y1 * y1 / p.mu;
      return {A2 + 3.0 * A4 * t + 5.0 * t * t, 0.0, 0.0};
    }
    case Model::Molar: {
      const double A = p.param("A"), g = p.param("gamma");
      const double y1 = y[0], y2 = y[1];
      return {A + (3.0 * y1 * y1 + g * y2 * y2) / p.mu,
              A + (3.0 * y2 * y2 + g * y1 * y1) / p.mu,
              2.0 * g * y1 * y2 / p.mu};
    }
  }
  throw ContractError("unknown model");
}

// True iff the potential grows to +inf in every direction.  The leading
// even-order coefficients decide; for the molar the quartic form
// y1^4 + 2 g y1^2 y2^2 + y2^4 is positive definite iff gamma > -1.
inline bool check_bounded_below(const CatastrophePotential& p) {
  switch (p.model) {
    case Model::Cusp:
    case Model::Butterfly:
      return p.mu > 0.0;
    case Model::Molar:
      return p.mu > 0.0 && p.param("gamma") > -1.0;
  }
  return false;
}

}  // namespace qcat
