#pragma once

#include <Eigen/Dense>

#include "hdsign/errors.hpp"

namespace hdsign {

enum class TestMode { exact, plugin };

// n observations of dimension p, one observation per row.
struct DataMatrix {
  Eigen::MatrixXd values;

  explicit DataMatrix(Eigen::MatrixXd v) : values(std::move(v)) {
    if (values.rows() < 3)
      throw invalid_input("DataMatrix: need at least 3 observations");
    if (values.cols() < 2)
      throw invalid_input("DataMatrix: need at least 2 variables");
    if (!values.allFinite())
      throw invalid_input("DataMatrix: non-finite entries");
  }

  Eigen::Index n() const { return values.rows(); }
  Eigen::Index p() const { return values.cols(); }
};

struct EstimationConfig {
  double tol = 1e-8;
  int max_iter = 200;
  // Relative floor: column variances below variance_floor * max column
  // variance are raised to the floor. An exactly constant column is an error.
  double variance_floor = 1e-12;
  TestMode mode = TestMode::exact;
  bool fix_theta_at_zero = false;

  void validate() const {
    if (!(tol > 0.0)) throw invalid_parameter("EstimationConfig: tol must be > 0");
    if (max_iter < 1)
      throw invalid_parameter("EstimationConfig: max_iter must be >= 1");
    if (!(variance_floor > 0.0))
      throw invalid_parameter("EstimationConfig: variance_floor must be > 0");
  }
};

// Joint location / diagonal-scale fit. The scale vector d is identified only
// up to a common positive factor; consumers must use it through
// d^{-1/2}-standardized directions, which are invariant to that factor.
template <typename Scalar>
struct HrFitT {
  Eigen::Vector<Scalar, Eigen::Dynamic> theta;
  Eigen::Vector<Scalar, Eigen::Dynamic> d;
  int iterations = 0;
  bool converged = false;
  // Max-norm of the mean spatial sign of the standardized residuals.
  Scalar residual_sign = Scalar(0);
  // Max-norm of p * diag(mean of sign outer products) minus one.
  Scalar residual_diag = Scalar(0);
};

using HrFit = HrFitT<double>;

struct TestOutcome {
  double statistic = 0.0;    // mean pairwise inner product of spatial signs
  double trace_r2 = 0.0;     // estimate of tr(R^2)
  double sigma2 = 0.0;       // null variance: 2 * trace_r2 / (n (n-1) p^2)
  double z = 0.0;            // statistic / sqrt(sigma2)
  double p_value = 1.0;      // one-sided upper tail
  double alpha = 0.05;
  bool reject = false;
  TestMode mode = TestMode::exact;
  int nonconverged_fits = 0;  // scale fits that hit max_iter
};

}  // namespace hdsign
