#pragma once

#include <cmath>

#include "qcat/errors.hpp"

namespace qcat {

// Uniform 1D grid.  point(i) uses the interpolation form so that symmetric
// domains (y_min = -y_max) produce bitwise mirror-symmetric nodes, which the
// parity handling in the solvers relies on.
struct Grid1D {
  double y_min = -1.0;
  double y_max = 1.0;
  int n_points = 64;

  Grid1D() = default;
  Grid1D(double lo, double hi, int n) : y_min(lo), y_max(hi), n_points(n) {
    if (!(hi > lo)) throw ContractError("Grid1D: y_max must exceed y_min");
    if (n < 64) throw ContractError("Grid1D: need at least 64 points");
  }

  double spacing() const { return (y_max - y_min) / (n_points - 1); }

  double point(int i) const {
    const double n1 = static_cast<double>(n_points - 1);
    return ((n1 - i) * y_min + i * y_max) / n1;
  }

  bool symmetric() const { return y_min == -y_max; }
};

inline Grid1D make_symmetric_grid(double half_width, int n_points) {
  return Grid1D(-half_width, half_width, n_points);
}

}  // namespace qcat
