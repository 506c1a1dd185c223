#pragma once

#include <Eigen/Dense>

#include "hdsign/rng.hpp"
#include "hdsign/scenarios.hpp"

namespace hdsign {

// Inputs of the asymptotic power formulas. mean_inv_norm is E||eps||^-1 and
// mean_sq_norm is E||eps||^2 for the standardized residual
// eps = D^{-1/2}(X - mu); tau1_sq/tau2_sq/zeta describe the block setup of
// the scale-sensitivity comparison (variance tau1^2 on the first half,
// tau2^2 on the second, mean shift zeta on the first half).
struct PowerSpec {
  int n = 100;
  int p = 200;
  double alpha = 0.05;
  Eigen::VectorXd mu;
  Eigen::VectorXd d;          // diagonal scale (variance scale)
  double trace_r2 = 0.0;      // tr(R^2)
  double mean_inv_norm = 0.0; // E||eps||^-1
  double mean_sq_norm = 0.0;  // E||eps||^2; defaults to p when <= 0
  double tau1_sq = 1.0;
  double tau2_sq = 1.0;
  double zeta = 0.0;
};

enum class WplRegime { tau1_dominant, tau2_dominant };

// ARE of the sign test relative to the moment-based scalar-invariant test
// under the multivariate t with nu degrees of freedom:
// 2/(nu-2) * (Gamma((nu+1)/2) / Gamma(nu/2))^2.
double are_ss_pa_t(int nu);

// Monte Carlo estimate of the same ARE for an arbitrary family:
// E^2(||eps||^-1) * E(||eps||^2). Finite p leaves an O(1/p) gap to the
// closed form; the estimate is reported as-is.
double are_ss_pa_mc(const ScenarioSpec& family, int p, int draws,
                    RngStream rng);

// Monte Carlo estimate of E||eps||^-1.
double estimate_mean_inv_norm(const ScenarioSpec& family, int p, int draws,
                              RngStream rng);

// Power of the sign test under the local alternative:
// Phi(-z_alpha + c0^2 n p mu' D^-1 mu / sqrt(2 tr(R^2))).
double asymptotic_power_ss(const PowerSpec& spec);

// Power of the moment-based comparator, using the covariance-scale identities
// D~ = p^-1 E||eps||^2 D and tr(R~^2) = tr(R^2).
double asymptotic_power_pa(const PowerSpec& spec);

// Power of the direction-based (non-scalar-invariant) comparator in the two
// tractable block regimes.
double asymptotic_power_wpl(const PowerSpec& spec, WplRegime regime);

// Power of the sign test in the same block setup (equal to the general
// formula specialized to the block parameters).
double asymptotic_power_ss_block(const PowerSpec& spec);

// ARE of the sign test relative to the direction-based comparator:
// 1/sqrt(2) when the shifted block dominates the scale, tau2^2/(sqrt(2)
// tau1^2) when the other block does.
double are_ss_wpl(const PowerSpec& spec, WplRegime regime);

namespace detail {

struct EpsMoments {
  double mean_inv_norm = 0.0;
  double mean_sq_norm = 0.0;
};

EpsMoments eps_moments(const ScenarioSpec& family, int p, int draws,
                       RngStream rng);

}  // namespace detail

}  // namespace hdsign
