#pragma once

namespace hdsign {

// Standard normal CDF, absolute error below 1e-15.
double norm_cdf(double x);

// Inverse standard normal CDF for p in (0, 1); Acklam's rational
// approximation with one Halley refinement, absolute error below 1e-13.
double norm_quantile(double p);

// Upper-alpha critical value z_alpha, i.e. norm_quantile(1 - alpha).
double norm_upper_quantile(double alpha);

}  // namespace hdsign
