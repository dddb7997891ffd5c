#include "anchorex/basis.hpp"

#include <cmath>
#include <numbers>

#include "anchorex/linalg.hpp"

namespace anchorex {
namespace {

constexpr double kPi = std::numbers::pi;

class AffinePolyBasis : public BasisFamily {
 public:
  AffinePolyBasis(int d, double lo, double hi, bool chebyshev)
      : d_(d), lo_(lo), hi_(hi), chebyshev_(chebyshev) {
    if (d < 1) throw ValidationError("basis needs at least one function");
    if (!(lo < hi)) throw ValidationError("basis interval must satisfy lo < hi");
  }

  int dim() const override { return d_; }
  int ambient_dim() const override { return 1; }
  std::string name() const override {
    return chebyshev_ ? "chebyshev_affine" : "legendre_affine";
  }

  void evaluate_point(const double* x, double* out) const override {
    // u in [-1,1] via t = alpha u + beta.
    const double alpha = 0.5 * (hi_ - lo_);
    const double beta = 0.5 * (hi_ + lo_);
    const double u = (x[0] - beta) / alpha;
    out[0] = 1.0;
    if (d_ == 1) return;
    out[1] = u;
    for (int k = 2; k < d_; ++k) {
      if (chebyshev_) {
        out[k] = 2.0 * u * out[k - 1] - out[k - 2];
      } else {
        out[k] = ((2.0 * k - 1.0) * u * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
      }
    }
  }

 private:
  int d_;
  double lo_, hi_;
  bool chebyshev_;
};

class RealSphericalHarmonics : public BasisFamily {
 public:
  explicit RealSphericalHarmonics(int l_max) : l_max_(l_max) {
    if (l_max < 0) throw ValidationError("l_max must be >= 0");
    build_normalization();
  }

  int dim() const override { return (l_max_ + 1) * (l_max_ + 1); }
  int ambient_dim() const override { return 3; }
  std::string name() const override { return "real_spherical_harmonics"; }

  void evaluate_point(const double* x, double* out) const override {
    const double mu = x[2];
    const double phi = std::atan2(x[1], x[0]);
    // Associated Legendre P_l^m(mu) without Condon-Shortley phase, by the
    // standard stable recurrences (diagonal, then upward in l).
    const int L = l_max_;
    Eigen::MatrixXd p(L + 1, L + 1);
    const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    p(0, 0) = 1.0;
    for (int m = 1; m <= L; ++m) p(m, m) = (2.0 * m - 1.0) * s * p(m - 1, m - 1);
    for (int m = 0; m < L; ++m) p(m + 1, m) = (2.0 * m + 1.0) * mu * p(m, m);
    for (int m = 0; m <= L; ++m) {
      for (int l = m + 2; l <= L; ++l) {
        p(l, m) = ((2.0 * l - 1.0) * mu * p(l - 1, m) - (l + m - 1.0) * p(l - 2, m)) /
                  (l - m);
      }
    }
    int k = 0;
    for (int l = 0; l <= L; ++l) {
      for (int m = -l; m <= l; ++m, ++k) {
        const int am = std::abs(m);
        const double base = norm_(l, am) * p(l, am);
        if (m < 0) {
          out[k] = std::numbers::sqrt2 * base * std::sin(am * phi);
        } else if (m == 0) {
          out[k] = base;
        } else {
          out[k] = std::numbers::sqrt2 * base * std::cos(am * phi);
        }
      }
    }
  }

 private:
  void build_normalization() {
    const int L = l_max_;
    norm_.resize(L + 1, L + 1);
    norm_.setZero();
    for (int l = 0; l <= L; ++l) {
      for (int m = 0; m <= l; ++m) {
        double ratio = 1.0;  // (l-m)! / (l+m)!
        for (int j = l - m + 1; j <= l + m; ++j) ratio /= j;
        norm_(l, m) = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * ratio);
      }
    }
  }

  int l_max_;
  Eigen::MatrixXd norm_;
};

class Sine2D : public BasisFamily {
 public:
  explicit Sine2D(std::vector<std::pair<int, int>> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) throw ValidationError("sine2d needs at least one mode");
    for (const auto& [kx, ky] : modes_) {
      if (kx < 1 || ky < 1) throw ValidationError("sine2d modes must be >= 1");
    }
  }

  int dim() const override { return static_cast<int>(modes_.size()); }
  int ambient_dim() const override { return 2; }
  std::string name() const override { return "sine2d"; }

  void evaluate_point(const double* x, double* out) const override {
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      out[i] = 2.0 * std::sin(modes_[i].first * kPi * x[0]) *
               std::sin(modes_[i].second * kPi * x[1]);
    }
  }

  const std::vector<std::pair<int, int>>& modes() const { return modes_; }

 private:
  std::vector<std::pair<int, int>> modes_;
};

}  // namespace

Eigen::MatrixXd BasisFamily::evaluate(const QuadratureGrid& grid) const {
  if (grid.dim() != ambient_dim()) {
    throw ValidationError("grid dimension does not match basis ambient space");
  }
  const Eigen::Index n = grid.size();
  Eigen::MatrixXd values(dim(), n);
  Eigen::VectorXd buffer(dim());
  Eigen::VectorXd node(grid.dim());
  for (Eigen::Index j = 0; j < n; ++j) {
    node = grid.points.row(j);
    evaluate_point(node.data(), buffer.data());
    values.col(j) = buffer;
  }
  if (!values.allFinite()) {
    throw NumericalError("basis evaluation produced non-finite values");
  }
  return values;
}

Eigen::VectorXd BasisFamily::synthesize(const Eigen::VectorXd& coeffs,
                                        const QuadratureGrid& grid) const {
  if (coeffs.size() != dim()) {
    throw ValidationError("coefficient length does not match basis dimension");
  }
  return evaluate(grid).transpose() * coeffs;
}

std::unique_ptr<BasisFamily> legendre_affine(int d, double lo, double hi) {
  return std::make_unique<AffinePolyBasis>(d, lo, hi, false);
}

std::unique_ptr<BasisFamily> chebyshev_affine(int d, double lo, double hi) {
  return std::make_unique<AffinePolyBasis>(d, lo, hi, true);
}

std::unique_ptr<BasisFamily> real_spherical_harmonics(int l_max) {
  return std::make_unique<RealSphericalHarmonics>(l_max);
}

std::unique_ptr<BasisFamily> sine2d(std::vector<std::pair<int, int>> modes) {
  return std::make_unique<Sine2D>(std::move(modes));
}

std::unique_ptr<BasisFamily> sine2d_full(int k) {
  std::vector<std::pair<int, int>> modes;
  for (int kx = 1; kx <= k; ++kx)
    for (int ky = 1; ky <= k; ++ky) modes.emplace_back(kx, ky);
  return std::make_unique<Sine2D>(std::move(modes));
}

Eigen::MatrixXd gram_matrix(const BasisFamily& basis, const QuadratureGrid& grid) {
  const Eigen::MatrixXd values = basis.evaluate(grid);
  Eigen::MatrixXd weighted = values * grid.weights.asDiagonal();
  Eigen::MatrixXd g = weighted * values.transpose();
  // Fill upper triangle, mirror: enforce exact symmetry.
  Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  return sym;
}

GramPair gram_matrices(const BasisFamily& basis, const Region& omega,
                       const Region& xi) {
  require_disjoint(omega, xi);
  GramPair pair;
  pair.g_omega = gram_matrix(basis, build_grid(omega));
  pair.g_xi = gram_matrix(basis, build_grid(xi));
  return pair;
}

Eigen::VectorXd OrthonormalBasis::to_orthonormal(const Eigen::VectorXd& beta) const {
  return whitening.colPivHouseholderQr().solve(beta);
}

OrthonormalBasis orthonormalize_grams(const Eigen::MatrixXd& g_omega,
                                      const Eigen::MatrixXd& g_xi) {
  OrthonormalBasis onb;
  onb.g_omega = g_omega;
  onb.g_xi = g_xi;
  const Eigen::Index d = g_omega.rows();
  bool cholesky_ok = true;
  Eigen::MatrixXd lower;
  try {
    lower = cholesky_lower(g_omega);
  } catch (const SingularGram&) {
    cholesky_ok = false;
  }
  if (cholesky_ok) {
    // W = L^{-T}: solve L^T W = I.
    onb.whitening = lower.transpose()
                        .triangularView<Eigen::Upper>()
                        .solve(Eigen::MatrixXd::Identity(d, d));
  } else {
    // Eigen-whitening fallback for Grams Cholesky cannot factor.
    const SymmetricEigen eig = symmetric_eigen(g_omega);
    const double lambda_max = eig.values(0);
    const double lambda_min = eig.values(d - 1);
    if (!(lambda_min > 1e-12 * lambda_max)) {
      throw SingularGram("Gram matrix on the sample region is numerically singular");
    }
    onb.whitening = eig.vectors * eig.values.cwiseSqrt().cwiseInverse().asDiagonal();
  }
  Eigen::MatrixXd gt = onb.whitening.transpose() * g_xi * onb.whitening;
  onb.g_tilde_xi = 0.5 * (gt + gt.transpose());
  return onb;
}

OrthonormalBasis orthonormalize_on(const BasisFamily& basis, const Region& omega,
                                   const Region& xi) {
  const GramPair grams = gram_matrices(basis, omega, xi);
  return orthonormalize_grams(grams.g_omega, grams.g_xi);
}

}  // namespace anchorex
