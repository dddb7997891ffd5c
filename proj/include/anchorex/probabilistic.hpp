#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "anchorex/basis.hpp"
#include "anchorex/errors.hpp"

namespace anchorex {

struct BetaParams {
  double a;
  double b;
};

// Regularized incomplete beta I_x(a,b) to ~1e-10 absolute, via Lentz's
// continued fraction with the symmetry switch at x > (a+1)/(a+b+2).
double regularized_incomplete_beta(double x, BetaParams params);

// Smallest z with I_z(a,b) >= rho, by bisection to 1e-12.
double beta_quantile(double rho, BetaParams params);

// n Rayleigh quotients s^T G s with s uniform on the unit sphere (normalized
// Gaussians), sorted ascending. Sample i draws from substream (seed, i), so
// the result is independent of any work partitioning.
Eigen::VectorXd sample_rayleigh_quotients(const Eigen::MatrixXd& g_tilde, long n,
                                          std::uint64_t seed);

// Order statistic at index ceil(rho * n) of an ascending sample vector.
double empirical_quantile(const Eigen::VectorXd& sorted_ascending, double rho);

struct ProbRadiusReport {
  double rho = 0.0;
  double kappa_rho_beta = 0.0;  // lambda_max * BetaInv(rho; 1/2, (d-1)/2)
  double kappa_rho_mc = 0.0;    // empirical rho-quantile of s^T G s
  Eigen::VectorXd lambda_top;   // leading eigenvalues (two or more)
  double spectral_gap_ratio = 0.0;  // lambda_max / lambda_2
  long n_samples = 0;
  std::uint64_t seed = 0;
};

ProbRadiusReport kappa_rho(const OrthonormalBasis& onb, double rho, long n,
                           std::uint64_t seed);

struct LowRankSamples {
  Eigen::VectorXd samples;  // ascending energies ||P_{U_r} s||^2
  BetaParams law;           // Beta(r/2, (d-r)/2)
};

// Energy of a uniform direction in the top-r eigenspace of g_tilde.
LowRankSamples low_rank_projection_energy(const Eigen::MatrixXd& g_tilde, int r,
                                          long n, std::uint64_t seed);

// Generic concentration comparison: tr(G)/d + C lambda_max sqrt(log(2/delta)/d)
// with the reporting convention C = 1.
double concentration_quantile_bound(const Eigen::MatrixXd& g_tilde, double delta);

// One-sample Kolmogorov-Smirnov statistic of ascending samples against a CDF.
template <typename Cdf>
double ks_statistic(const Eigen::VectorXd& sorted_ascending, Cdf cdf) {
  const double n = static_cast<double>(sorted_ascending.size());
  double d_stat = 0.0;
  for (Eigen::Index i = 0; i < sorted_ascending.size(); ++i) {
    const double f = cdf(sorted_ascending(i));
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d_stat = std::max({d_stat, hi, lo});
  }
  return d_stat;
}

}  // namespace anchorex
