#include <cmath>
#include <numbers>

#include "anchorex/linalg.hpp"
#include "anchorex/probabilistic.hpp"
#include "anchorex/rng.hpp"
#include "doctest.h"

using namespace anchorex;

TEST_CASE("regularized incomplete beta against closed forms") {
  // arcsine law: I_x(1/2,1/2) = (2/pi) asin(sqrt(x))
  for (double x : {0.05, 0.3, 0.5, 0.77, 0.99}) {
    const double expect = 2.0 / std::numbers::pi * std::asin(std::sqrt(x));
    CHECK(regularized_incomplete_beta(x, {0.5, 0.5}) ==
          doctest::Approx(expect).epsilon(1e-10));
  }
  // I_x(1,b) = 1 - (1-x)^b and I_x(a,1) = x^a
  CHECK(regularized_incomplete_beta(0.2, {1.0, 3.0}) ==
        doctest::Approx(1.0 - std::pow(0.8, 3.0)).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(0.6, {2.5, 1.0}) ==
        doctest::Approx(std::pow(0.6, 2.5)).epsilon(1e-10));
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
  CHECK(regularized_incomplete_beta(0.42, {2.0, 5.0}) ==
        doctest::Approx(1.0 - regularized_incomplete_beta(0.58, {5.0, 2.0}))
            .epsilon(1e-10));
  CHECK(regularized_incomplete_beta(0.42, {2.0, 5.0}) ==
        doctest::Approx(0.79652940192).epsilon(1e-9));
  // endpoints
  CHECK(regularized_incomplete_beta(0.0, {0.5, 4.0}) == doctest::Approx(0.0));
  CHECK(regularized_incomplete_beta(1.0, {0.5, 4.0}) == doctest::Approx(1.0));
}

TEST_CASE("beta_quantile inverts the CDF and matches reference values") {
  CHECK(beta_quantile(0.5, {0.5, 4.0}) ==
        doctest::Approx(0.0587108013397836).epsilon(1e-8));
  CHECK(beta_quantile(0.9, {0.5, 4.0}) ==
        doctest::Approx(0.301792928793775).epsilon(1e-8));
  CHECK(beta_quantile(0.7, {0.5, 4.5}) ==
        doctest::Approx(0.118457361807016).epsilon(1e-8));
  CHECK(beta_quantile(0.25, {2.5, 3.5}) ==
        doctest::Approx(0.273903730316942).epsilon(1e-8));
  for (double rho : {0.1, 0.5, 0.93}) {
    const double z = beta_quantile(rho, {0.5, 12.0});
    CHECK(regularized_incomplete_beta(z, {0.5, 12.0}) ==
          doctest::Approx(rho).epsilon(1e-9));
  }
}

TEST_CASE("empirical_quantile uses the ceil(rho n) order statistic") {
  Eigen::VectorXd v(10);
  for (int i = 0; i < 10; ++i) v(i) = static_cast<double>(i + 1);
  CHECK(empirical_quantile(v, 0.5) == doctest::Approx(5.0));
  CHECK(empirical_quantile(v, 0.91) == doctest::Approx(10.0));
  CHECK(empirical_quantile(v, 0.09) == doctest::Approx(1.0));
  CHECK_THROWS_AS(empirical_quantile(v, 1.0), ValidationError);
  CHECK_THROWS_AS(empirical_quantile(Eigen::VectorXd(), 0.5), ValidationError);
}

TEST_CASE("rayleigh quotients: range, ordering, and trace/d mean identity") {
  Eigen::VectorXd lam(6);
  lam << 100.0, 40.0, 10.0, 4.0, 1.0, 0.5;
  const Eigen::MatrixXd g = lam.asDiagonal();
  const long n = 20000;
  const Eigen::VectorXd q = sample_rayleigh_quotients(g, n, 123);
  REQUIRE(q.size() == n);
  for (long i = 1; i < n; ++i) CHECK(q(i) >= q(i - 1));
  CHECK(q(0) >= lam.minCoeff());
  CHECK(q(n - 1) <= lam.maxCoeff());

  // E[s^T G s] = trace/d for uniform directions; 3-sigma band via sample std
  const double mean = q.mean();
  const double expect = lam.sum() / 6.0;
  double var = 0.0;
  for (long i = 0; i < n; ++i) var += (q(i) - mean) * (q(i) - mean);
  const double se = std::sqrt(var / static_cast<double>(n - 1) /
                              static_cast<double>(n));
  CHECK(std::abs(mean - expect) < 3.0 * se);

  // deterministic in the seed, sensitive to it
  const Eigen::VectorXd q2 = sample_rayleigh_quotients(g, 100, 123);
  const Eigen::VectorXd q3 = sample_rayleigh_quotients(g, 100, 124);
  CHECK(q2(50) == sample_rayleigh_quotients(g, 100, 123)(50));
  CHECK(q2(50) != q3(50));
}

TEST_CASE("rank-one law: q/lambda is Beta(1/2,(d-1)/2)") {
  const int d = 9;
  const double lambda = 356448.0;
  Rng direction(77);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = direction.gaussian();
  v.normalize();
  const Eigen::MatrixXd g = lambda * v * v.transpose();

  const long n = 10000;
  Eigen::VectorXd q = sample_rayleigh_quotients(g, n, 5);
  for (long i = 0; i < n; ++i) q(i) /= lambda;
  const BetaParams law{0.5, (d - 1) / 2.0};
  const double ks = ks_statistic(
      q, [&](double x) { return regularized_incomplete_beta(x, law); });
  CHECK(ks < 1.36 / std::sqrt(static_cast<double>(n)));  // 95% band
}

TEST_CASE("kappa_rho: beta radius is lambda_max * BetaInv, mc tracks the sample") {
  Eigen::VectorXd lam(9);
  lam << 900.0, 5.0, 4.0, 3.0, 2.0, 1.0, 0.5, 0.2, 0.1;
  OrthonormalBasis onb;
  onb.g_tilde_xi = lam.asDiagonal();

  const ProbRadiusReport report = kappa_rho(onb, 0.7, 4000, 99);
  CHECK(report.rho == doctest::Approx(0.7));
  CHECK(report.lambda_top(0) == doctest::Approx(900.0).epsilon(1e-10));
  CHECK(report.spectral_gap_ratio == doctest::Approx(180.0).epsilon(1e-9));
  CHECK(report.kappa_rho_beta ==
        doctest::Approx(900.0 * beta_quantile(0.7, {0.5, 4.0})).epsilon(1e-12));

  // The mc quantile must cover close to rho of an independent holdout.
  const Eigen::VectorXd holdout =
      sample_rayleigh_quotients(onb.g_tilde_xi, 4000, 1234);
  double covered = 0.0;
  for (long i = 0; i < holdout.size(); ++i)
    covered += holdout(i) <= report.kappa_rho_mc ? 1.0 : 0.0;
  covered /= static_cast<double>(holdout.size());
  CHECK(covered == doctest::Approx(0.7).epsilon(0.05));
}

TEST_CASE("low-rank projection energy follows Beta(r/2,(d-r)/2)") {
  const int d = 10;
  const int r = 2;
  Eigen::VectorXd lam(d);
  for (int i = 0; i < d; ++i) lam(i) = std::pow(2.0, d - i);
  const Eigen::MatrixXd g = lam.asDiagonal();

  const LowRankSamples s = low_rank_projection_energy(g, r, 8000, 31);
  CHECK(s.law.a == doctest::Approx(1.0));
  CHECK(s.law.b == doctest::Approx(4.0));
  const double ks = ks_statistic(s.samples, [&](double x) {
    return regularized_incomplete_beta(x, s.law);
  });
  CHECK(ks < 1.36 / std::sqrt(8000.0));
  CHECK_THROWS_AS(low_rank_projection_energy(g, 0, 10, 1), ValidationError);
  CHECK_THROWS_AS(low_rank_projection_energy(g, d, 10, 1), ValidationError);
}

TEST_CASE("concentration bound formula and KS statistic oracle") {
  Eigen::VectorXd lam(4);
  lam << 8.0, 2.0, 1.0, 1.0;
  const Eigen::MatrixXd g = lam.asDiagonal();
  const double expect = 12.0 / 4.0 + 8.0 * std::sqrt(std::log(2.0 / 0.1) / 4.0);
  CHECK(concentration_quantile_bound(g, 0.1) ==
        doctest::Approx(expect).epsilon(1e-12));

  Eigen::VectorXd sorted(3);
  sorted << 0.1, 0.5, 0.9;
  const double ks = ks_statistic(sorted, [](double x) { return x; });
  CHECK(ks == doctest::Approx(1.0 / 3.0 - 0.1).epsilon(1e-12));
}
