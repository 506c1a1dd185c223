#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>

#include "hdsign/errors.hpp"
#include "hdsign/types.hpp"

namespace hdsign {

namespace detail {

// Column variances with the relative floor applied. Throws degenerate_column
// when a column is exactly constant (about the mean, or about zero when
// about_zero is set).
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> floored_column_scales(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& X,
    bool about_zero, double floor_rel) {
  const Eigen::Index n = X.rows();
  Eigen::Vector<Scalar, Eigen::Dynamic> scales(X.cols());
  if (about_zero) {
    scales = X.array().square().colwise().sum() / Scalar(n);
  } else {
    const auto means = X.colwise().mean();
    scales = (X.rowwise() - means).array().square().colwise().sum() /
             Scalar(n - 1);
  }
  const Scalar max_scale = scales.maxCoeff();
  if (!(max_scale > Scalar(0)))
    throw degenerate_column("hr_estimate: all columns are constant");
  const Scalar floor = Scalar(floor_rel) * max_scale;
  for (Eigen::Index j = 0; j < scales.size(); ++j) {
    if (scales[j] == Scalar(0))
      throw degenerate_column("hr_estimate: column " + std::to_string(j) +
                              " is constant");
    if (scales[j] < floor) scales[j] = floor;
  }
  return scales;
}

// Simultaneous fixed point for the location vector and the diagonal scale:
// the mean spatial sign of the standardized residuals is driven to zero and
// p * diag(mean sign outer product) to the identity. Each cycle evaluates the
// residual signs once and applies the location and scale updates from the
// same evaluation. Residuals reported in the fit belong to the returned
// iterate, not to the last update.
template <typename Scalar>
HrFitT<Scalar> hr_fit_kernel(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& X,
    const EstimationConfig& cfg,
    std::optional<Eigen::Vector<Scalar, Eigen::Dynamic>> theta0 = {},
    std::optional<Eigen::Vector<Scalar, Eigen::Dynamic>> d0 = {}) {
  using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  const Scalar tol = Scalar(cfg.tol);

  HrFitT<Scalar> fit;
  if (theta0) {
    fit.theta = *theta0;
  } else if (cfg.fix_theta_at_zero) {
    fit.theta = Vector::Zero(p);
  } else {
    fit.theta = X.colwise().mean().transpose();
  }
  if (d0) {
    fit.d = *d0;
  } else {
    fit.d = floored_column_scales(X, cfg.fix_theta_at_zero, cfg.variance_floor);
  }
  if ((fit.d.array() <= Scalar(0)).any())
    throw invalid_parameter("hr_estimate: initial scales must be positive");

  Matrix signs(n, p);
  Vector mean_sign(p), mean_sq(p);
  for (int iter = 0;; ++iter) {
    const Vector inv_sd = fit.d.array().rsqrt();
    Scalar inv_norm_sum = Scalar(0);
    mean_sign.setZero();
    mean_sq.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
      signs.row(i) =
          ((X.row(i).transpose() - fit.theta).array() * inv_sd.array())
              .transpose();
      const Scalar norm = signs.row(i).norm();
      if (norm > Scalar(0)) {
        signs.row(i) /= norm;
        inv_norm_sum += Scalar(1) / norm;
      } else {
        signs.row(i).setZero();  // zero residual contributes a zero sign
      }
      mean_sign += signs.row(i).transpose();
      mean_sq.array() += signs.row(i).transpose().array().square();
    }
    mean_sign /= Scalar(n);
    mean_sq /= Scalar(n);

    fit.residual_sign = mean_sign.template lpNorm<Eigen::Infinity>();
    fit.residual_diag =
        (Scalar(p) * mean_sq.array() - Scalar(1)).abs().maxCoeff();
    if (!std::isfinite(double(fit.residual_sign)) ||
        !std::isfinite(double(fit.residual_diag)))
      throw numerical_failure("hr_estimate: non-finite residual");

    const bool sign_ok = cfg.fix_theta_at_zero || fit.residual_sign <= tol;
    if (sign_ok && fit.residual_diag <= tol) {
      fit.converged = true;
      fit.iterations = iter;
      return fit;
    }
    if (iter == cfg.max_iter) {
      fit.converged = false;
      fit.iterations = iter;
      return fit;
    }

    if (!cfg.fix_theta_at_zero) {
      if (!(inv_norm_sum > Scalar(0)))
        throw numerical_failure("hr_estimate: all residuals are zero");
      fit.theta.array() += fit.d.array().sqrt() * mean_sign.array() *
                           Scalar(n) / inv_norm_sum;
    }
    fit.d.array() *= Scalar(p) * mean_sq.array();
    if (!fit.theta.allFinite() || !fit.d.allFinite() ||
        (fit.d.array() <= Scalar(0)).any())
      throw numerical_failure("hr_estimate: iterate left the feasible set");
  }
}

}  // namespace detail

// Fits the joint location / diagonal-scale estimating equations by the
// three-step recursion, starting from the sample mean and sample variances
// (second moments about zero when fix_theta_at_zero is set). Stops when both
// residual norms fall below cfg.tol; after cfg.max_iter updates the last
// iterate is returned with converged = false.
inline HrFit hr_estimate(const DataMatrix& X, const EstimationConfig& cfg,
                         std::optional<Eigen::VectorXd> theta0 = {},
                         std::optional<Eigen::VectorXd> d0 = {}) {
  cfg.validate();
  return detail::hr_fit_kernel<double>(X.values, cfg, std::move(theta0),
                                       std::move(d0));
}

}  // namespace hdsign
