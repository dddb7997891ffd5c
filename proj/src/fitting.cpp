#include "anchorex/fitting.hpp"

#include <cmath>
#include <limits>

#include "anchorex/linalg.hpp"
#include "anchorex/rng.hpp"

namespace anchorex {
namespace {

Eigen::VectorXd solve_spd_system(const Eigen::MatrixXd& a,
                                 const Eigen::VectorXd& b) {
  // Cholesky first; validate the solve, then fall back to the spectral
  // pseudo-inverse so rank deficiency yields the minimal-norm solution.
  const double scale = std::max(b.norm(), 1e-300);
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() == Eigen::Success) {
    Eigen::VectorXd beta = llt.solve(b);
    if ((a * beta - b).norm() <= 1e-8 * scale) return beta;
  }
  const SymmetricEigen eig = symmetric_eigen(a);
  const double cutoff = 1e-12 * std::max(eig.values(0), 0.0);
  Eigen::VectorXd inv = eig.values;
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    inv(i) = eig.values(i) > cutoff ? 1.0 / eig.values(i) : 0.0;
  }
  return eig.vectors * inv.asDiagonal() * eig.vectors.transpose() * b;
}

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

}  // namespace

Eigen::MatrixXd design_matrix(const BasisFamily& basis,
                              const Eigen::MatrixXd& points) {
  if (points.cols() != basis.ambient_dim()) {
    throw ValidationError("sample points do not match the basis ambient space");
  }
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd x(n, basis.dim());
  Eigen::VectorXd buffer(basis.dim());
  Eigen::VectorXd node(points.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    node = points.row(i);
    basis.evaluate_point(node.data(), buffer.data());
    x.row(i) = buffer;
  }
  if (!x.allFinite()) {
    throw NumericalError("basis evaluation produced non-finite design entries");
  }
  return x;
}

FitResult fit_ls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() != y.size()) throw ValidationError("design/value size mismatch");
  if (x.rows() < 1) throw ValidationError("empty sample set");
  FitResult fit;
  fit.method = "ls";
  fit.coeffs = solve_spd_system(x.transpose() * x, x.transpose() * y);
  return fit;
}

FitResult fit_ridge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    double alpha) {
  if (alpha < 0.0) throw ValidationError("ridge penalty must be nonnegative");
  if (x.rows() != y.size()) throw ValidationError("design/value size mismatch");
  Eigen::MatrixXd a = x.transpose() * x;
  a.diagonal().array() += alpha;
  FitResult fit;
  fit.method = "ridge";
  fit.alpha = alpha;
  fit.coeffs = solve_spd_system(a, x.transpose() * y);
  return fit;
}

FitResult fit_lasso(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    double alpha, double tol, int max_iter) {
  if (alpha < 0.0) throw ValidationError("lasso penalty must be nonnegative");
  if (x.rows() != y.size()) throw ValidationError("design/value size mismatch");
  const double n = static_cast<double>(x.rows());
  const Eigen::Index d = x.cols();

  // Covariance form: A = X^T X / N, b = X^T y / N; gradient g = A beta is
  // maintained across coordinate updates.
  const Eigen::MatrixXd a = x.transpose() * x / n;
  const Eigen::VectorXd b = x.transpose() * y / n;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(d);

  FitResult fit;
  fit.method = "lasso";
  fit.alpha = alpha;
  fit.converged = false;
  int sweep = 0;
  for (; sweep < max_iter; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      const double akk = a(k, k);
      if (akk <= 0.0) continue;
      const double old = beta(k);
      const double z = b(k) - grad(k) + akk * old;
      const double next = soft_threshold(z, alpha) / akk;
      if (next != old) {
        beta(k) = next;
        grad += a.col(k) * (next - old);
        max_change = std::max(max_change, std::abs(next - old));
      }
    }
    if (max_change <= tol) {
      fit.converged = true;
      ++sweep;
      break;
    }
  }
  fit.iterations = sweep;
  fit.coeffs = beta;
  return fit;
}

double empirical_e_omega(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& coeffs, double omega_measure) {
  if (x.rows() < 1) throw ValidationError("empty sample set");
  const Eigen::VectorXd resid = y - x * coeffs;
  const double mean_sq = resid.squaredNorm() / static_cast<double>(x.rows());
  return std::sqrt(omega_measure * mean_sq);
}

Eigen::MatrixXd sample_points(const Region& omega, long n, SampleLayout layout,
                              std::uint64_t seed) {
  if (n < 1) throw ValidationError("need at least one sample point");
  Rng rng(seed);
  if (layout == SampleLayout::grid) {
    if (omega.kind != RegionKind::interval) {
      throw ValidationError("grid sampling is defined for intervals only");
    }
    const double lo = omega.bounds[0][0];
    const double hi = omega.bounds[0][1];
    Eigen::MatrixXd points(n, 1);
    for (long i = 0; i < n; ++i) {
      points(i, 0) =
          n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1.0);
    }
    return points;
  }

  switch (omega.kind) {
    case RegionKind::interval: {
      Eigen::MatrixXd points(n, 1);
      for (long i = 0; i < n; ++i) {
        points(i, 0) = rng.uniform(omega.bounds[0][0], omega.bounds[0][1]);
      }
      return points;
    }
    case RegionKind::interval_union: {
      // Piece chosen proportionally to length, then uniform within.
      std::vector<double> cumulative;
      double total = 0.0;
      for (const auto& p : omega.bounds) {
        total += p[1] - p[0];
        cumulative.push_back(total);
      }
      Eigen::MatrixXd points(n, 1);
      for (long i = 0; i < n; ++i) {
        const double u = rng.uniform() * total;
        std::size_t piece = 0;
        while (piece + 1 < cumulative.size() && u > cumulative[piece]) ++piece;
        points(i, 0) = rng.uniform(omega.bounds[piece][0], omega.bounds[piece][1]);
      }
      return points;
    }
    case RegionKind::sphere_patch: {
      // Area-uniform: z uniform on [cos(theta_hi), cos(theta_lo)].
      const double z_lo = std::cos(omega.bounds[0][1]);
      const double z_hi = std::cos(omega.bounds[0][0]);
      Eigen::MatrixXd points(n, 3);
      for (long i = 0; i < n; ++i) {
        const double z = rng.uniform(z_lo, z_hi);
        const double phi = rng.uniform(omega.bounds[1][0], omega.bounds[1][1]);
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        points(i, 0) = s * std::cos(phi);
        points(i, 1) = s * std::sin(phi);
        points(i, 2) = z;
      }
      return points;
    }
    case RegionKind::rect2d: {
      Eigen::MatrixXd points(n, 2);
      for (long i = 0; i < n; ++i) {
        points(i, 0) = rng.uniform(omega.bounds[0][0], omega.bounds[0][1]);
        points(i, 1) = rng.uniform(omega.bounds[1][0], omega.bounds[1][1]);
      }
      return points;
    }
    case RegionKind::rect2d_minus_patch: {
      Eigen::MatrixXd points(n, 2);
      for (long i = 0; i < n; ++i) {
        // Rejection from the outer rect; acceptance >= 1 - patch fraction.
        for (;;) {
          const double px = rng.uniform(omega.bounds[0][0], omega.bounds[0][1]);
          const double py = rng.uniform(omega.bounds[1][0], omega.bounds[1][1]);
          const bool inside_patch =
              px >= omega.bounds[2][0] && px <= omega.bounds[2][1] &&
              py >= omega.bounds[3][0] && py <= omega.bounds[3][1];
          if (!inside_patch) {
            points(i, 0) = px;
            points(i, 1) = py;
            break;
          }
        }
      }
      return points;
    }
  }
  throw ValidationError("unknown region kind");
}

SampleSet synthesize_samples(const BasisFamily& basis,
                             const Eigen::VectorXd& truth_coeffs,
                             const Region& omega, long n, SampleLayout layout,
                             const NoiseSpec& noise, std::uint64_t seed) {
  SampleSet samples;
  samples.seed = seed;
  samples.points = sample_points(omega, n, layout, seed);
  const Eigen::MatrixXd x = design_matrix(basis, samples.points);
  const Eigen::VectorXd clean = x * truth_coeffs;

  double sigma = noise.sigma;
  if (!std::isnan(noise.snr_db)) {
    const double p_signal = clean.squaredNorm() / static_cast<double>(n);
    sigma = std::sqrt(p_signal / std::pow(10.0, noise.snr_db / 10.0));
  }
  if (sigma < 0.0) throw ValidationError("noise sigma must be nonnegative");

  samples.noise_sigma = sigma;
  samples.values = clean;
  if (sigma > 0.0) {
    // Noise stream is decoupled from the location stream so grid and random
    // layouts consume seeds identically.
    Rng noise_rng = Rng::substream(seed, 0x6e6f697365ULL);
    for (long i = 0; i < n; ++i) samples.values(i) += sigma * noise_rng.gaussian();
  }
  return samples;
}

}  // namespace anchorex
