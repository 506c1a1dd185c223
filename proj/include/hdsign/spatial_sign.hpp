#pragma once

#include <Eigen/Dense>

#include "hdsign/errors.hpp"

namespace hdsign {

// Spatial sign map: x / ||x|| for x != 0, the zero vector otherwise.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> spatial_sign(
    const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (!x.allFinite())
    throw invalid_input("spatial_sign: input has non-finite entries");
  const Scalar norm = x.norm();
  if (norm == Scalar(0))
    return Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(x.size());
  return x / norm;
}

// Row-wise spatial signs; zero rows map to zero rows.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
row_spatial_signs(const Eigen::MatrixBase<Derived>& X) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> signs = X;
  for (Eigen::Index i = 0; i < signs.rows(); ++i) {
    const Scalar norm = signs.row(i).norm();
    if (norm > Scalar(0)) signs.row(i) /= norm;
  }
  return signs;
}

}  // namespace hdsign
