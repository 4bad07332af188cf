#pragma once

#include <lapacke.h>

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qcat/errors.hpp"

namespace qcat::detail {

// Lowest k eigenpairs of a symmetric tridiagonal matrix (diag, off), by
// bisection plus inverse iteration (dstevr).
inline void tridiag_lowest(std::vector<double> diag, std::vector<double> off,
                           int k, Eigen::VectorXd& values,
                           Eigen::MatrixXd& vectors) {
  const int n = static_cast<int>(diag.size());
  if (k > n) k = n;
  off.resize(n > 0 ? n - 1 + 1 : 1);  // dstevr wants n-1 entries plus slack
  values.resize(k);
  vectors.resize(n, k);
  std::vector<double> w(n);
  std::vector<lapack_int> isuppz(2 * std::max(1, k));
  lapack_int m = 0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1, k,
      0.0, &m, w.data(), vectors.data(), n, isuppz.data());
  if (info != 0 || m < k)
    throw ConvergenceError("tridiagonal eigensolver failed (dstevr info=" +
                               std::to_string(info) + ")",
                           {static_cast<double>(info)});
  for (int i = 0; i < k; ++i) values[i] = w[i];
}

}  // namespace qcat::detail
