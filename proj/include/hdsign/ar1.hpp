#pragma once

#include <Eigen/Dense>

namespace hdsign {

// AR(1) correlation matrix R[i][j] = rho^|i-j|.
Eigen::MatrixXd ar1_correlation(int p, double rho);

// tr(R^2) = p + 2 * sum_{k=1}^{p-1} (p-k) rho^{2k}, by direct summation.
double ar1_trace_r2(int p, double rho);

// tr(R^4) by explicit matrix multiplication; intended for diagnostics at
// moderate p (the product is the whole cost).
double ar1_trace_r4(int p, double rho);

// tr(Sigma^2) for Sigma = D^{1/2} R D^{1/2} with diagonal D = diag(d) and
// AR(1) correlation R: sum_{i,j} d_i d_j rho^{2|i-j|}.
double scatter_trace_sq(const Eigen::VectorXd& d, double rho);

}  // namespace hdsign
