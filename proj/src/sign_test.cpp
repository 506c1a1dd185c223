#include "hdsign/sign_test.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hdsign/hr_estimator.hpp"
#include "hdsign/normal.hpp"
#include "hdsign/spatial_sign.hpp"

namespace hdsign {
namespace detail {

namespace {

Eigen::VectorXd unit_or_zero(Eigen::VectorXd v) {
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
  return v;
}

PairStatistics exact_sweep(const Eigen::MatrixXd& X,
                           const EstimationConfig& cfg) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  PairStatistics out;

  Eigen::MatrixXd sub(n - 2, p);
  double stat_sum = 0.0;
  double trace_sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Eigen::Index row = 0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        sub.row(row++) = X.row(k);
      }
      const auto fit = hr_fit_kernel<double>(sub, cfg);
      if (!fit.converged) ++out.nonconverged;

      const Eigen::VectorXd inv_sd = fit.d.array().rsqrt();
      const Eigen::VectorXd ui =
          unit_or_zero(X.row(i).transpose().cwiseProduct(inv_sd));
      const Eigen::VectorXd uj =
          unit_or_zero(X.row(j).transpose().cwiseProduct(inv_sd));
      stat_sum += ui.dot(uj);

      const Eigen::VectorXd vi = unit_or_zero(
          (X.row(i).transpose() - fit.theta).cwiseProduct(inv_sd));
      const Eigen::VectorXd vj = unit_or_zero(
          (X.row(j).transpose() - fit.theta).cwiseProduct(inv_sd));
      const double dot = vi.dot(vj);
      trace_sum += dot * dot;
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  out.statistic = 2.0 * stat_sum / pairs;
  out.trace_r2 = 2.0 * static_cast<double>(p) * static_cast<double>(p) *
                 trace_sum / pairs;
  return out;
}

PairStatistics plugin_sweep(const Eigen::MatrixXd& X,
                            const EstimationConfig& cfg) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  PairStatistics out;

  // The uncentered statistic needs a scale that carries no location noise:
  // a jointly fitted theta-hat feeds the spatial-median sampling error back
  // into the signs as a spurious shift, inflating the null mean of z like
  // sqrt(p)/n. The null-constrained fit mirrors the mean-zero property the
  // leave-two-out construction has automatically.
  EstimationConfig stat_cfg = cfg;
  stat_cfg.fix_theta_at_zero = true;
  const auto stat_fit = hr_fit_kernel<double>(X, stat_cfg);
  if (!stat_fit.converged) ++out.nonconverged;

  // The trace estimator centers its signs, so it keeps the joint fit
  // (or the same null fit when the caller pinned theta).
  const auto trace_fit =
      cfg.fix_theta_at_zero ? stat_fit : hr_fit_kernel<double>(X, cfg);
  if (!cfg.fix_theta_at_zero && !trace_fit.converged) ++out.nonconverged;

  Eigen::MatrixXd raw =
      X.array().rowwise() *
      stat_fit.d.array().rsqrt().transpose().array();
  Eigen::MatrixXd centered =
      (X.rowwise() - trace_fit.theta.transpose()).array().rowwise() *
      trace_fit.d.array().rsqrt().transpose().array();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double rn = raw.row(i).norm();
    if (rn > 0.0) raw.row(i) /= rn;
    const double cn = centered.row(i).norm();
    if (cn > 0.0) centered.row(i) /= cn;
  }

  const Eigen::MatrixXd gram_raw = raw * raw.transpose();
  const Eigen::MatrixXd gram_cen = centered * centered.transpose();
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);

  const double offdiag_sum = gram_raw.sum() - gram_raw.trace();
  out.statistic = offdiag_sum / pairs;

  const double sq_offdiag =
      gram_cen.squaredNorm() - gram_cen.diagonal().squaredNorm();
  out.trace_r2 = static_cast<double>(p) * static_cast<double>(p) *
                 sq_offdiag / pairs;
  return out;
}

}  // namespace

PairStatistics pair_statistics(const DataMatrix& X,
                               const EstimationConfig& cfg) {
  cfg.validate();
  if (cfg.mode == TestMode::exact) {
    if (X.n() < 10)
      throw insufficient_sample(
          "exact mode needs n >= 10 so every leave-two-out fit sees at "
          "least 8 observations");
    return exact_sweep(X.values, cfg);
  }
  return plugin_sweep(X.values, cfg);
}

}  // namespace detail

double pair_sign_statistic(const DataMatrix& X, const EstimationConfig& cfg) {
  return detail::pair_statistics(X, cfg).statistic;
}

double trace_r2_estimate(const DataMatrix& X, const EstimationConfig& cfg) {
  return detail::pair_statistics(X, cfg).trace_r2;
}

TestOutcome spatial_sign_test(const DataMatrix& X, double alpha,
                              const EstimationConfig& cfg) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw invalid_parameter("spatial_sign_test: alpha must lie in (0, 1)");
  const auto ps = detail::pair_statistics(X, cfg);
  if (!(ps.trace_r2 > 0.0))
    throw numerical_failure("spatial_sign_test: trace estimate is not positive");

  const double n = static_cast<double>(X.n());
  const double p = static_cast<double>(X.p());
  TestOutcome out;
  out.statistic = ps.statistic;
  out.trace_r2 = ps.trace_r2;
  out.sigma2 = 2.0 * ps.trace_r2 / (n * (n - 1.0) * p * p);
  out.z = ps.statistic / std::sqrt(out.sigma2);
  out.p_value = norm_cdf(-out.z);
  out.alpha = alpha;
  out.reject = out.z > norm_upper_quantile(alpha);
  out.mode = cfg.mode;
  out.nonconverged_fits = ps.nonconverged;
  return out;
}

}  // namespace hdsign
