#include "hdsign/ar1.hpp"

#include <cmath>

#include "hdsign/errors.hpp"

namespace hdsign {

namespace {

void check_ar1_params(int p, double rho) {
  if (p < 2) throw invalid_parameter("ar1: p must be >= 2");
  if (!(std::abs(rho) < 1.0))
    throw invalid_parameter("ar1: |rho| must be < 1");
}

}  // namespace

Eigen::MatrixXd ar1_correlation(int p, double rho) {
  check_ar1_params(p, rho);
  Eigen::MatrixXd r(p, p);
  for (int i = 0; i < p; ++i) {
    r(i, i) = 1.0;
    double power = 1.0;
    for (int j = i + 1; j < p; ++j) {
      power *= rho;
      r(i, j) = power;
      r(j, i) = power;
    }
  }
  return r;
}

double ar1_trace_r2(int p, double rho) {
  check_ar1_params(p, rho);
  const double q = rho * rho;
  double sum = 0.0;
  double qk = 1.0;
  for (int k = 1; k < p; ++k) {
    qk *= q;
    if (qk == 0.0) break;
    sum += static_cast<double>(p - k) * qk;
  }
  return static_cast<double>(p) + 2.0 * sum;
}

double ar1_trace_r4(int p, double rho) {
  const Eigen::MatrixXd r = ar1_correlation(p, rho);
  const Eigen::MatrixXd r2 = r * r;
  return r2.squaredNorm();  // tr(R^4) = ||R^2||_F^2 for symmetric R
}

double scatter_trace_sq(const Eigen::VectorXd& d, double rho) {
  const int p = static_cast<int>(d.size());
  check_ar1_params(p, rho);
  if ((d.array() <= 0.0).any())
    throw invalid_parameter("scatter_trace_sq: diagonal must be positive");
  const double q = rho * rho;
  double total = d.squaredNorm();
  double qk = 1.0;
  for (int k = 1; k < p; ++k) {
    qk *= q;
    if (qk == 0.0) break;
    double band = 0.0;
    for (int i = 0; i + k < p; ++i) band += d[i] * d[i + k];
    total += 2.0 * qk * band;
  }
  return total;
}

}  // namespace hdsign
