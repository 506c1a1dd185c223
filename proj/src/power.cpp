#include "hdsign/power.hpp"

#include <cmath>

#include "hdsign/errors.hpp"
#include "hdsign/normal.hpp"

namespace hdsign {

double are_ss_pa_t(int nu) {
  if (nu <= 2)
    throw invalid_parameter("are_ss_pa_t: nu must be >= 3 (finite variance)");
  const double g = std::lgamma((nu + 1) / 2.0) - std::lgamma(nu / 2.0);
  return 2.0 / (nu - 2.0) * std::exp(2.0 * g);
}

namespace detail {

EpsMoments eps_moments(const ScenarioSpec& family, int p, int draws,
                       RngStream rng) {
  if (draws < 1) throw invalid_parameter("eps_moments: draws must be >= 1");
  ScenarioSpec spec = family;
  spec.p = p;
  spec.scatter.p = p;
  spec.n = 1;
  spec.mu_pattern = MuPattern::null_location;
  spec.eta = 0.0;
  spec.validate();
  if (spec.family == Family::mvt && spec.nu < 3)
    throw invalid_parameter("eps_moments: t family needs nu >= 3");

  const ScenarioSampler sampler(spec);
  RandomEngine rows(rng, 0);
  RandomEngine scatter(rng, 1);
  const auto realization = sampler.realize(scatter);
  const Eigen::VectorXd inv_sd = realization.d.array().rsqrt();

  Eigen::VectorXd x(p);
  double sum_inv = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    sampler.sample_row(rows, realization, x);
    const double norm_sq =
        ((x - realization.mu).array() * inv_sd.array()).square().sum();
    sum_sq += norm_sq;
    sum_inv += 1.0 / std::sqrt(norm_sq);
  }
  return EpsMoments{sum_inv / draws, sum_sq / draws};
}

}  // namespace detail

double are_ss_pa_mc(const ScenarioSpec& family, int p, int draws,
                    RngStream rng) {
  const auto m = detail::eps_moments(family, p, draws, rng);
  return m.mean_inv_norm * m.mean_inv_norm * m.mean_sq_norm;
}

double estimate_mean_inv_norm(const ScenarioSpec& family, int p, int draws,
                              RngStream rng) {
  return detail::eps_moments(family, p, draws, rng).mean_inv_norm;
}

namespace {

void check_power_spec(const PowerSpec& spec) {
  if (spec.n < 1 || spec.p < 2)
    throw invalid_parameter("power: need n >= 1 and p >= 2");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw invalid_parameter("power: alpha must lie in (0, 1)");
  if (!(spec.trace_r2 >= spec.p))
    throw invalid_parameter("power: tr(R^2) must be >= p");
  if (!(spec.mean_inv_norm > 0.0))
    throw invalid_parameter("power: mean_inv_norm must be positive");
}

double shift_quadratic(const PowerSpec& spec) {
  if (spec.mu.size() == 0) return 0.0;
  if (spec.mu.size() != spec.d.size())
    throw invalid_parameter("power: mu and d must have equal length");
  if ((spec.d.array() <= 0.0).any())
    throw invalid_parameter("power: d must be positive");
  return (spec.mu.array().square() / spec.d.array()).sum();
}

}  // namespace

double asymptotic_power_ss(const PowerSpec& spec) {
  check_power_spec(spec);
  const double c0_sq = spec.mean_inv_norm * spec.mean_inv_norm;
  const double drift = c0_sq * spec.n * spec.p * shift_quadratic(spec) /
                       std::sqrt(2.0 * spec.trace_r2);
  return norm_cdf(-norm_upper_quantile(spec.alpha) + drift);
}

double asymptotic_power_pa(const PowerSpec& spec) {
  check_power_spec(spec);
  const double mean_sq =
      spec.mean_sq_norm > 0.0 ? spec.mean_sq_norm : double(spec.p);
  const double drift = spec.n * spec.p * shift_quadratic(spec) / mean_sq /
                       std::sqrt(2.0 * spec.trace_r2);
  return norm_cdf(-norm_upper_quantile(spec.alpha) + drift);
}

namespace {

// Drift of the sign test in the block setup: the general formula with
// tr(R^2) = p and mu' D^-1 mu = (p/2) zeta^2 / tau1^2.
double block_drift_ss(const PowerSpec& spec) {
  if (!(spec.tau1_sq > 0.0 && spec.tau2_sq > 0.0))
    throw invalid_parameter("power: block variances must be positive");
  const double c0_sq = spec.mean_inv_norm * spec.mean_inv_norm;
  return c0_sq * spec.n * spec.p * spec.p * spec.zeta * spec.zeta /
         (2.0 * spec.tau1_sq * std::sqrt(2.0 * spec.p));
}

}  // namespace

double asymptotic_power_ss_block(const PowerSpec& spec) {
  if (spec.n < 1 || spec.p < 2)
    throw invalid_parameter("power: need n >= 1 and p >= 2");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw invalid_parameter("power: alpha must lie in (0, 1)");
  if (!(spec.mean_inv_norm > 0.0))
    throw invalid_parameter("power: mean_inv_norm must be positive");
  return norm_cdf(-norm_upper_quantile(spec.alpha) + block_drift_ss(spec));
}

double asymptotic_power_wpl(const PowerSpec& spec, WplRegime regime) {
  if (spec.n < 1 || spec.p < 2)
    throw invalid_parameter("power: need n >= 1 and p >= 2");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw invalid_parameter("power: alpha must lie in (0, 1)");
  if (!(spec.mean_inv_norm > 0.0))
    throw invalid_parameter("power: mean_inv_norm must be positive");
  double drift = std::sqrt(2.0) * block_drift_ss(spec);
  if (regime == WplRegime::tau2_dominant)
    drift *= spec.tau1_sq / spec.tau2_sq;
  return norm_cdf(-norm_upper_quantile(spec.alpha) + drift);
}

double are_ss_wpl(const PowerSpec& spec, WplRegime regime) {
  if (!(spec.tau1_sq > 0.0 && spec.tau2_sq > 0.0))
    throw invalid_parameter("power: block variances must be positive");
  if (regime == WplRegime::tau1_dominant) return 1.0 / std::sqrt(2.0);
  return spec.tau2_sq / (std::sqrt(2.0) * spec.tau1_sq);
}

}  // namespace hdsign
