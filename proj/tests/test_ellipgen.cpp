#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "hdsign/ar1.hpp"
#include "hdsign/scenarios.hpp"

using namespace hdsign;

TEST_CASE("ar1_correlation: direct values") {
  const Eigen::MatrixXd r = ar1_correlation(3, 0.5);
  Eigen::MatrixXd expected(3, 3);
  expected << 1.0, 0.5, 0.25, 0.5, 1.0, 0.5, 0.25, 0.5, 1.0;
  CHECK((r - expected).lpNorm<Eigen::Infinity>() == 0.0);

  CHECK(ar1_correlation(4, 0.0).isIdentity(0.0));
  CHECK(ar1_correlation(2, 0.9)(0, 1) == 0.9);

  CHECK_THROWS_AS((void)ar1_correlation(3, 1.0), invalid_parameter);
  CHECK_THROWS_AS((void)ar1_correlation(3, -1.2), invalid_parameter);
}

TEST_CASE("ar1_correlation: symmetric, unit diagonal, positive definite") {
  for (double rho : {0.9, 0.5, -0.5}) {
    const Eigen::MatrixXd r = ar1_correlation(200, rho);
    CHECK((r - r.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((r.diagonal().array() == 1.0).all());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("ar1_trace_r2: frozen values and the matrix cross-check") {
  CHECK(ar1_trace_r2(3, 0.5) == doctest::Approx(4.125).epsilon(1e-14));
  CHECK(ar1_trace_r2(123, 0.0) == 123.0);
  CHECK(ar1_trace_r2(2, 0.5) == doctest::Approx(2.5).epsilon(1e-14));

  for (double rho : {0.5, -0.3}) {
    for (int p = 2; p <= 200; ++p) {
      const Eigen::MatrixXd r = ar1_correlation(p, rho);
      const double direct = (r * r).trace();
      CHECK(ar1_trace_r2(p, rho) == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("ar1_trace_r4 matches the eigenvalue route") {
  const Eigen::MatrixXd r = ar1_correlation(150, 0.5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
  const double via_eigs = eig.eigenvalues().array().pow(4).sum();
  CHECK(ar1_trace_r4(150, 0.5) == doctest::Approx(via_eigs).epsilon(1e-10));
}

TEST_CASE("scatter_trace_sq agrees with the explicit scatter matrix") {
  Eigen::VectorXd d(5);
  d << 3.0, 3.0, 1.0, 0.5, 2.0;
  const double rho = 0.5;
  const Eigen::MatrixXd r = ar1_correlation(5, rho);
  const Eigen::MatrixXd sigma =
      d.array().sqrt().matrix().asDiagonal() * r *
      d.array().sqrt().matrix().asDiagonal();
  CHECK(scatter_trace_sq(d, rho) ==
        doctest::Approx((sigma * sigma).trace()).epsilon(1e-12));
}

TEST_CASE("calibrated_mean: structure and calibration identity") {
  SUBCASE("null pattern is all zeros") {
    const ScenarioSpec spec =
        ScenarioSpec::preset(1, 50, 10, MuPattern::null_location, 0.0);
    CHECK(calibrated_mean(spec).norm() == 0.0);
  }

  SUBCASE("dense: zeros on the first half, common value on the rest") {
    ScenarioSpec spec = ScenarioSpec::preset(1, 50, 4, MuPattern::dense);
    spec.scatter.rho = 0.0;  // identity covariance, so sqrt(tr(Cov^2)) = 2
    const Eigen::VectorXd mu = calibrated_mean(spec);
    CHECK(mu[0] == 0.0);
    CHECK(mu[1] == 0.0);
    CHECK(mu[2] == doctest::Approx(std::sqrt(0.03)).epsilon(1e-12));
    CHECK(mu[3] == mu[2]);
    CHECK(mu.squaredNorm() == doctest::Approx(0.06).epsilon(1e-12));
  }

  SUBCASE("sparse on p = 200 leaves ten nonzero slots") {
    const ScenarioSpec spec = ScenarioSpec::preset(1, 50, 200,
                                                   MuPattern::sparse);
    const Eigen::VectorXd mu = calibrated_mean(spec);
    CHECK((mu.head(190).array() == 0.0).all());
    CHECK((mu.tail(10).array() > 0.0).all());
    const double target = 0.03 * std::sqrt(ar1_trace_r2(200, 0.5));
    CHECK(std::fabs(mu.squaredNorm() - target) <= 1e-10 * target);
  }

  SUBCASE("calibration tracks the family variance scale") {
    for (int scenario : {1, 2, 3, 5}) {
      const ScenarioSpec spec =
          ScenarioSpec::preset(scenario, 50, 60, MuPattern::dense);
      const Eigen::VectorXd d = scatter_diagonal(spec);
      const double target = spec.eta * family_variance_scale(spec) *
                            std::sqrt(scatter_trace_sq(d, 0.5));
      const Eigen::VectorXd mu = calibrated_mean(spec);
      CHECK(std::fabs(mu.squaredNorm() - target) <= 1e-10 * target);
    }
  }

  SUBCASE("eta must match the pattern") {
    ScenarioSpec spec = ScenarioSpec::preset(1, 50, 10, MuPattern::dense);
    spec.eta = 0.0;
    CHECK_THROWS_AS((void)calibrated_mean(spec), invalid_parameter);
  }
}

TEST_CASE("sampling: determinism contract") {
  const ScenarioSpec spec = ScenarioSpec::preset(4, 8, 12, MuPattern::dense);
  const ScenarioSampler sampler(spec);
  const Eigen::MatrixXd a = sampler.sample_matrix(RngStream{99, 3});
  const Eigen::MatrixXd b = sampler.sample_matrix(RngStream{99, 3});
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::MatrixXd c = sampler.sample_matrix(RngStream{99, 4});
  CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);

  // A fresh sampler reproduces the same replication.
  const Eigen::MatrixXd d =
      ScenarioSampler(spec).sample_matrix(RngStream{99, 3});
  CHECK((a - d).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sampling: law-of-large-numbers smoke checks") {
  SUBCASE("normal null columns center at zero with AR(1) correlation") {
    ScenarioSpec spec = ScenarioSpec::preset(1, 5000, 5,
                                             MuPattern::null_location, 0.0);
    const Eigen::MatrixXd X = ScenarioSampler(spec).sample_matrix(
        RngStream{2718, 0});
    CHECK(X.colwise().mean().lpNorm<Eigen::Infinity>() < 0.05);

    const Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / (X.rows() - 1.0);
    Eigen::VectorXd sd = cov.diagonal().array().sqrt();
    const Eigen::MatrixXd corr =
        cov.array() / (sd * sd.transpose()).array();
    const Eigen::MatrixXd target = ar1_correlation(5, 0.5);
    CHECK((corr - target).lpNorm<Eigen::Infinity>() < 0.05);
  }

  SUBCASE("mixture marginal variance is 1.8 of the scatter diagonal") {
    ScenarioSpec spec = ScenarioSpec::preset(5, 5000, 4,
                                             MuPattern::null_location, 0.0);
    const Eigen::MatrixXd X = ScenarioSampler(spec).sample_matrix(
        RngStream{333, 0});
    const Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
    const Eigen::VectorXd var =
        centered.array().square().colwise().sum() / (X.rows() - 1.0);
    for (int j = 0; j < 4; ++j)
      CHECK(var[j] == doctest::Approx(1.8).epsilon(0.05));
  }

  SUBCASE("t_4 marginals are heavy-tailed") {
    ScenarioSpec spec = ScenarioSpec::preset(3, 5000, 3,
                                             MuPattern::null_location, 0.0);
    const Eigen::MatrixXd X = ScenarioSampler(spec).sample_matrix(
        RngStream{777, 0});
    const Eigen::VectorXd col = X.col(0);
    const double mean = col.mean();
    const double m2 = (col.array() - mean).square().mean();
    const double m4 = (col.array() - mean).pow(4).mean();
    CHECK(m4 / (m2 * m2) > 3.0);
  }
}

TEST_CASE("sampling: scenario IV redraws the scatter per replication") {
  const ScenarioSpec spec = ScenarioSpec::preset(4, 6, 8, MuPattern::dense);
  const ScenarioSampler sampler(spec);
  RandomEngine s0(RngStream{5, 0}, 1);
  RandomEngine s1(RngStream{5, 1}, 1);
  const auto r0 = sampler.realize(s0);
  const auto r1 = sampler.realize(s1);
  CHECK((r0.d - r1.d).cwiseAbs().maxCoeff() > 0.0);
  CHECK((r0.d.array() > 0.0).all());
  // The calibration keeps pace with the realized scatter.
  const double target0 = spec.eta * family_variance_scale(spec) *
                         std::sqrt(scatter_trace_sq(r0.d, 0.5));
  CHECK(std::fabs(r0.mu.squaredNorm() - target0) <= 1e-10 * target0);
}

TEST_CASE("scenario validation") {
  CHECK_THROWS_AS((void)ScenarioSpec::preset(6, 50, 10, MuPattern::dense),
                  invalid_parameter);
  ScenarioSpec spec = ScenarioSpec::preset(3, 50, 10, MuPattern::dense);
  spec.nu = 2;
  CHECK_THROWS_AS(spec.validate(), invalid_parameter);
  spec = ScenarioSpec::preset(1, 50, 10, MuPattern::null_location, 0.0);
  spec.eta = 0.01;
  CHECK_THROWS_AS(spec.validate(), invalid_parameter);
}

TEST_CASE("scenario labels") {
  CHECK(scenario_label(ScenarioSpec::preset(1, 5, 4, MuPattern::dense)) == "I");
  CHECK(scenario_label(ScenarioSpec::preset(2, 5, 4, MuPattern::dense)) == "II");
  CHECK(scenario_label(ScenarioSpec::preset(3, 5, 4, MuPattern::dense)) == "III");
  CHECK(scenario_label(ScenarioSpec::preset(4, 5, 4, MuPattern::dense)) == "IV");
  CHECK(scenario_label(ScenarioSpec::preset(5, 5, 4, MuPattern::dense)) == "V");
}
