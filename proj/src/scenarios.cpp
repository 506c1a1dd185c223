#include "hdsign/scenarios.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>

#include "hdsign/ar1.hpp"
#include "hdsign/errors.hpp"

namespace hdsign {

void ScenarioSpec::validate() const {
  if (p < 2) throw invalid_parameter("scenario: p must be >= 2");
  if (n < 1) throw invalid_parameter("scenario: n must be >= 1");
  if (scatter.p != p)
    throw invalid_parameter("scenario: scatter dimension must match p");
  if (!(std::abs(scatter.rho) < 1.0))
    throw invalid_parameter("scenario: |rho| must be < 1");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw invalid_parameter("scenario: gamma must lie in (0, 1]");
  if (family == Family::mvt && nu < 3)
    throw invalid_parameter("scenario: t family needs nu >= 3");
  if (family == Family::mixture_normal && !(mixture_scale > 0.0))
    throw invalid_parameter("scenario: mixture_scale must be positive");
  const bool is_null = mu_pattern == MuPattern::null_location;
  if (is_null != (eta == 0.0))
    throw invalid_parameter("scenario: eta must be 0 exactly for the null");
  if (eta < 0.0) throw invalid_parameter("scenario: eta must be >= 0");
}

ScenarioSpec ScenarioSpec::preset(int scenario, int n, int p,
                                  MuPattern pattern, double eta) {
  ScenarioSpec spec;
  spec.n = n;
  spec.p = p;
  spec.scatter = ScatterSpec{p, 0.5, DScheme::identity};
  spec.mu_pattern = pattern;
  spec.eta = pattern == MuPattern::null_location ? 0.0 : eta;
  switch (scenario) {
    case 1:
      spec.family = Family::normal;
      break;
    case 2:
      spec.family = Family::normal;
      spec.scatter.d_scheme = DScheme::half_three;
      break;
    case 3:
      spec.family = Family::mvt;
      break;
    case 4:
      spec.family = Family::mvt;
      spec.scatter.d_scheme = DScheme::chisq4_random;
      break;
    case 5:
      spec.family = Family::mixture_normal;
      break;
    default:
      throw invalid_parameter("scenario preset must be 1..5");
  }
  spec.validate();
  return spec;
}

std::string scenario_label(const ScenarioSpec& spec) {
  if (spec.family == Family::normal)
    return spec.scatter.d_scheme == DScheme::half_three ? "II" : "I";
  if (spec.family == Family::mvt)
    return spec.scatter.d_scheme == DScheme::chisq4_random ? "IV" : "III";
  return "V";
}

double family_variance_scale(const ScenarioSpec& spec) {
  switch (spec.family) {
    case Family::normal:
      return 1.0;
    case Family::mvt:
      return static_cast<double>(spec.nu) / (spec.nu - 2.0);
    case Family::mixture_normal:
      return spec.gamma + (1.0 - spec.gamma) * spec.mixture_scale;
  }
  return 1.0;
}

Eigen::VectorXd scatter_diagonal(const ScenarioSpec& spec) {
  switch (spec.scatter.d_scheme) {
    case DScheme::identity:
      return Eigen::VectorXd::Ones(spec.p);
    case DScheme::half_three: {
      Eigen::VectorXd d = Eigen::VectorXd::Ones(spec.p);
      d.head(spec.p / 2).setConstant(3.0);
      return d;
    }
    case DScheme::chisq4_random:
      throw invalid_parameter(
          "scatter_diagonal: chisq4_random needs a per-replication draw");
  }
  throw invalid_parameter("scatter_diagonal: unknown scheme");
}

Eigen::VectorXd calibrated_mean(const ScenarioSpec& spec,
                                const Eigen::VectorXd& d_realized) {
  spec.validate();
  const int p = spec.p;
  if (spec.mu_pattern == MuPattern::null_location)
    return Eigen::VectorXd::Zero(p);

  const int zeros = spec.mu_pattern == MuPattern::dense
                        ? static_cast<int>(std::floor(0.5 * p))
                        : static_cast<int>(std::floor(0.95 * p));
  const int k = p - zeros;
  if (k <= 0) throw invalid_parameter("calibrated_mean: no nonzero slots");

  // ||mu||^2 = eta * sqrt(tr(Cov^2)); Cov = variance scale times the scatter.
  const double cov_trace_sq =
      family_variance_scale(spec) * std::sqrt(scatter_trace_sq(
                                        d_realized, spec.scatter.rho));
  const double common = std::sqrt(spec.eta * cov_trace_sq / k);
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(p);
  mu.tail(k).setConstant(common);
  return mu;
}

Eigen::VectorXd calibrated_mean(const ScenarioSpec& spec) {
  return calibrated_mean(spec, scatter_diagonal(spec));
}

ScenarioSampler::ScenarioSampler(const ScenarioSpec& spec) : spec_(spec) {
  spec_.validate();
  identity_correlation_ = spec_.scatter.rho == 0.0;
  if (!identity_correlation_) {
    const Eigen::MatrixXd corr = ar1_correlation(spec_.p, spec_.scatter.rho);
    Eigen::LLT<Eigen::MatrixXd> llt(corr);
    if (llt.info() != Eigen::Success)
      throw numerical_failure("sampler: correlation factorization failed");
    chol_ = llt.matrixL();
  }
}

ScenarioSampler::Realization ScenarioSampler::realize(
    RandomEngine& scatter_engine) const {
  Realization r;
  if (spec_.scatter.d_scheme == DScheme::chisq4_random) {
    r.d.resize(spec_.p);
    for (int j = 0; j < spec_.p; ++j) {
      double v = scatter_engine.chi_squared(4);
      if (v <= 0.0) v = std::numeric_limits<double>::min();
      r.d[j] = v;
    }
  } else {
    r.d = scatter_diagonal(spec_);
  }
  r.mu = calibrated_mean(spec_, r.d);
  return r;
}

void ScenarioSampler::sample_row(RandomEngine& engine, const Realization& r,
                                 Eigen::Ref<Eigen::VectorXd> out) const {
  double radial = 1.0;
  if (spec_.family == Family::mvt) {
    double w = engine.chi_squared(spec_.nu);
    if (w <= 0.0) w = std::numeric_limits<double>::min();
    radial = std::sqrt(static_cast<double>(spec_.nu) / w);
  } else if (spec_.family == Family::mixture_normal) {
    if (engine.uniform01() >= spec_.gamma)
      radial = std::sqrt(spec_.mixture_scale);
  }

  Eigen::VectorXd z(spec_.p);
  for (int j = 0; j < spec_.p; ++j) z[j] = engine.normal();

  if (identity_correlation_) {
    out = z;
  } else {
    out.noalias() = chol_.triangularView<Eigen::Lower>() * z;
  }
  out.array() *= radial * r.d.array().sqrt();
  out += r.mu;
}

Eigen::MatrixXd ScenarioSampler::sample_matrix(RngStream id) const {
  RandomEngine rows(id, 0);
  RandomEngine scatter(id, 1);
  const Realization r = realize(scatter);
  Eigen::MatrixXd X(spec_.n, spec_.p);
  Eigen::VectorXd row(spec_.p);
  for (int i = 0; i < spec_.n; ++i) {
    sample_row(rows, r, row);
    X.row(i) = row;
  }
  return X;
}

DataMatrix sample_scenario(const ScenarioSpec& spec, RngStream id) {
  return DataMatrix(ScenarioSampler(spec).sample_matrix(id));
}

}  // namespace hdsign
