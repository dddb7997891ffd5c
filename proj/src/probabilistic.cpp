#include "anchorex/probabilistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anchorex/linalg.hpp"
#include "anchorex/rng.hpp"

namespace anchorex {
namespace {

void validate_params(const BetaParams& p) {
  if (!(p.a > 0.0) || !(p.b > 0.0)) {
    throw ValidationError("Beta parameters must be positive");
  }
}

// Continued fraction for I_x(a,b) (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge");
}

Eigen::VectorXd unit_sphere_direction(int d, Rng& rng) {
  Eigen::VectorXd z(d);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < d; ++i) z(i) = rng.gaussian();
    norm2 = z.squaredNorm();
  } while (!(norm2 > 0.0));
  return z / std::sqrt(norm2);
}

}  // namespace

double regularized_incomplete_beta(double x, BetaParams params) {
  validate_params(params);
  if (x < 0.0 || x > 1.0) {
    throw ValidationError("incomplete beta argument must lie in [0,1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double a = params.a;
  const double b = params.b;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  // The prefactor is symmetric under (a,b,x) -> (b,a,1-x).
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double beta_quantile(double rho, BetaParams params) {
  validate_params(params);
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ValidationError("quantile level must lie in (0,1)");
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (regularized_incomplete_beta(mid, params) < rho) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd sample_rayleigh_quotients(const Eigen::MatrixXd& g_tilde, long n,
                                          std::uint64_t seed) {
  if (n < 1) throw ValidationError("need at least one sample");
  const int d = static_cast<int>(g_tilde.rows());
  Eigen::VectorXd out(n);
  for (long i = 0; i < n; ++i) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd s = unit_sphere_direction(d, rng);
    out(i) = s.dot(g_tilde * s);
  }
  std::sort(out.data(), out.data() + out.size());
  return out;
}

double empirical_quantile(const Eigen::VectorXd& sorted_ascending, double rho) {
  const long n = sorted_ascending.size();
  if (n < 1) throw ValidationError("empty sample vector");
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ValidationError("quantile level must lie in (0,1)");
  }
  long k = static_cast<long>(std::ceil(rho * static_cast<double>(n)));
  k = std::clamp(k, 1L, n);
  return sorted_ascending(k - 1);
}

ProbRadiusReport kappa_rho(const OrthonormalBasis& onb, double rho, long n,
                           std::uint64_t seed) {
  const SymmetricEigen eig = symmetric_eigen(onb.g_tilde_xi);
  const int d = static_cast<int>(onb.g_tilde_xi.rows());

  ProbRadiusReport report;
  report.rho = rho;
  report.n_samples = n;
  report.seed = seed;
  report.lambda_top = eig.values.head(std::min(d, 4));
  report.spectral_gap_ratio =
      d >= 2 ? eig.values(0) / eig.values(1) : std::numeric_limits<double>::infinity();
  report.kappa_rho_beta =
      eig.values(0) *
      beta_quantile(rho, BetaParams{0.5, (static_cast<double>(d) - 1.0) / 2.0});
  const Eigen::VectorXd samples = sample_rayleigh_quotients(onb.g_tilde_xi, n, seed);
  report.kappa_rho_mc = empirical_quantile(samples, rho);
  return report;
}

LowRankSamples low_rank_projection_energy(const Eigen::MatrixXd& g_tilde, int r,
                                          long n, std::uint64_t seed) {
  const int d = static_cast<int>(g_tilde.rows());
  if (r < 1 || r >= d) throw ValidationError("rank must satisfy 1 <= r < d");
  if (n < 1) throw ValidationError("need at least one sample");
  const SymmetricEigen eig = symmetric_eigen(g_tilde);
  const Eigen::MatrixXd u_r = eig.vectors.leftCols(r);

  LowRankSamples out;
  out.law = BetaParams{static_cast<double>(r) / 2.0,
                       static_cast<double>(d - r) / 2.0};
  out.samples.resize(n);
  for (long i = 0; i < n; ++i) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd s = unit_sphere_direction(d, rng);
    out.samples(i) = (u_r.transpose() * s).squaredNorm();
  }
  std::sort(out.samples.data(), out.samples.data() + out.samples.size());
  return out;
}

double concentration_quantile_bound(const Eigen::MatrixXd& g_tilde, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("confidence delta must lie in (0,1)");
  }
  const double d = static_cast<double>(g_tilde.rows());
  const double lambda_max = symmetric_eigen(g_tilde).values(0);
  return g_tilde.trace() / d + lambda_max * std::sqrt(std::log(2.0 / delta) / d);
}

}  // namespace anchorex
