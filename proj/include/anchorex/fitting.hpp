#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string>

#include "anchorex/basis.hpp"
#include "anchorex/region.hpp"

namespace anchorex {

struct SampleSet {
  Eigen::MatrixXd points;  // one sample location per row, ambient coordinates
  Eigen::VectorXd values;  // y_i = f(x_i) + eps_i
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

struct FitResult {
  Eigen::VectorXd coeffs;
  std::string method;  // "ls", "ridge", or "lasso"
  double alpha = 0.0;
  bool converged = true;
  int iterations = 0;
  double e_omega_empirical = 0.0;  // sqrt(|Omega| * mean residual^2)
};

// Entry (i,k) = phi_k(x_i).
Eigen::MatrixXd design_matrix(const BasisFamily& basis,
                              const Eigen::MatrixXd& points);

// Normal equations with Cholesky; falls back to an eigendecomposition
// pseudo-inverse (cutoff 1e-12 * lambda_max), which also yields the
// minimal-norm solution for rank-deficient problems.
FitResult fit_ls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

// Minimizes ||y - X beta||^2 + alpha ||beta||^2.
FitResult fit_ridge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    double alpha);

// Cyclic coordinate descent on (1/(2N)) ||y - X beta||^2 + alpha ||beta||_1;
// non-convergence is flagged, not thrown.
FitResult fit_lasso(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    double alpha, double tol = 1e-8, int max_iter = 100000);

// sqrt(|Omega| * (1/N) sum residual^2): raw residuals, so noise inflates the
// estimate and the certificate stays conservative.
double empirical_e_omega(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& coeffs, double omega_measure);

enum class SampleLayout { grid, uniform_random };

struct NoiseSpec {
  // Exactly one interpretation: direct sigma when snr_db is NaN, otherwise
  // sigma^2 = P_s / 10^(snr_db/10) with P_s = mean f(x_i)^2.
  double sigma = 0.0;
  double snr_db = std::numeric_limits<double>::quiet_NaN();
};

// Deterministic per seed: locations first (when random), then noise.
SampleSet synthesize_samples(const BasisFamily& basis,
                             const Eigen::VectorXd& truth_coeffs,
                             const Region& omega, long n, SampleLayout layout,
                             const NoiseSpec& noise, std::uint64_t seed);

// n sample locations in the region: inclusive uniform grid for 1D intervals,
// area-uniform random points for every region kind.
Eigen::MatrixXd sample_points(const Region& omega, long n, SampleLayout layout,
                              std::uint64_t seed);

}  // namespace anchorex
