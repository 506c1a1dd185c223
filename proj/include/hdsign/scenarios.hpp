#pragma once

#include <Eigen/Dense>
#include <string>

#include "hdsign/rng.hpp"
#include "hdsign/types.hpp"

namespace hdsign {

enum class DScheme {
  identity,       // all component variances 1
  half_three,     // variance 3 on the first half, 1 on the second
  chisq4_random,  // variances drawn from chi-squared(4), fresh per replication
};

enum class Family { normal, mvt, mixture_normal };

enum class MuPattern { null_location, dense, sparse };

struct ScatterSpec {
  int p = 2;
  double rho = 0.5;
  DScheme d_scheme = DScheme::identity;
};

struct ScenarioSpec {
  Family family = Family::normal;
  ScatterSpec scatter;
  int n = 50;
  int p = 200;
  double gamma = 0.9;         // mixture weight on the narrow component
  double mixture_scale = 9.0; // scatter multiplier of the wide component
  int nu = 4;                 // t degrees of freedom
  MuPattern mu_pattern = MuPattern::null_location;
  double eta = 0.0;           // ||mu||^2 / sqrt(tr(Cov^2)) calibration level

  void validate() const;

  // Scenarios I..V with the shared rho = 0.5 correlation.
  static ScenarioSpec preset(int scenario, int n, int p, MuPattern pattern,
                             double eta = 0.03);
};

// "I".."V" when the configuration matches a preset family/scheme pair.
std::string scenario_label(const ScenarioSpec& spec);

// Variance of the family relative to its scatter matrix: 1 for the normal,
// nu/(nu-2) for the t, gamma + (1-gamma)*mixture_scale for the mixture.
double family_variance_scale(const ScenarioSpec& spec);

// Component variances of the scatter diagonal for deterministic schemes.
Eigen::VectorXd scatter_diagonal(const ScenarioSpec& spec);

// Mean vector with zeros on the first 50% (dense) or 95% (sparse) of the
// coordinates and a common value on the rest, calibrated so that
// ||mu||^2 = eta * sqrt(tr(Cov^2)) for the realized covariance. The overload
// without a realized diagonal requires a deterministic d_scheme.
Eigen::VectorXd calibrated_mean(const ScenarioSpec& spec,
                                const Eigen::VectorXd& d_realized);
Eigen::VectorXd calibrated_mean(const ScenarioSpec& spec);

// Seeded sampler for one scenario. The correlation Cholesky factor is
// computed once at construction; sampling is const and thread-safe.
class ScenarioSampler {
 public:
  explicit ScenarioSampler(const ScenarioSpec& spec);

  struct Realization {
    Eigen::VectorXd d;   // scatter diagonal (variance scale)
    Eigen::VectorXd mu;  // calibrated mean shift
  };

  // Scatter diagonal and mean for one replication; chisq4_random draws the
  // diagonal from the engine, deterministic schemes ignore it.
  Realization realize(RandomEngine& scatter_engine) const;

  // One observation. Draw order per row is fixed: the radial/component
  // modifier first, then the p normals.
  void sample_row(RandomEngine& engine, const Realization& r,
                  Eigen::Ref<Eigen::VectorXd> out) const;

  // Full n x p replication. Substream 0 feeds the rows, substream 1 the
  // scatter realization, so equal stream ids give bit-identical matrices.
  Eigen::MatrixXd sample_matrix(RngStream id) const;

  const ScenarioSpec& spec() const { return spec_; }

 private:
  ScenarioSpec spec_;
  Eigen::MatrixXd chol_;  // lower Cholesky factor of the AR(1) correlation
  bool identity_correlation_ = false;
};

// Convenience wrapper: sample one replication of the scenario.
DataMatrix sample_scenario(const ScenarioSpec& spec, RngStream id);

}  // namespace hdsign
