#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "anchorex/region.hpp"

namespace anchorex {

// Ordered family of d real basis functions, evaluable on grid nodes given in
// ambient coordinates (1D points, 2D points, or unit vectors in R^3).
class BasisFamily {
 public:
  virtual ~BasisFamily() = default;

  virtual int dim() const = 0;
  virtual int ambient_dim() const = 0;
  virtual std::string name() const = 0;

  // Writes phi_1..phi_d at one node into out (length dim()).
  virtual void evaluate_point(const double* x, double* out) const = 0;

  // d x n value matrix: row k holds phi_k at all grid nodes.
  Eigen::MatrixXd evaluate(const QuadratureGrid& grid) const;

  // Values of sum_k coeffs_k phi_k on the grid.
  Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs,
                             const QuadratureGrid& grid) const;
};

// Legendre polynomials P_0..P_{d-1} composed with the affine map sending
// [lo,hi] to [-1,1]; orthogonal on [lo,hi].
std::unique_ptr<BasisFamily> legendre_affine(int d, double lo, double hi);

// Chebyshev T_0..T_{d-1} with the same affine map; not L2-orthogonal.
std::unique_ptr<BasisFamily> chebyshev_affine(int d, double lo, double hi);

// Real orthonormal spherical harmonics for l <= l_max, d = (l_max+1)^2,
// ordered (l, m) with m = -l..l; no Condon-Shortley phase.
std::unique_ptr<BasisFamily> real_spherical_harmonics(int l_max);

// L2(0,1)^2-orthonormal products 2 sin(kx pi x) sin(ky pi y) over the given
// mode list.
std::unique_ptr<BasisFamily> sine2d(std::vector<std::pair<int, int>> modes);

// All k^2 modes (kx, ky) in {1..k}^2, row-major.
std::unique_ptr<BasisFamily> sine2d_full(int k);

struct GramPair {
  Eigen::MatrixXd g_omega;
  Eigen::MatrixXd g_xi;
};

// Gram matrix Phi diag(w) Phi^T on one grid; symmetric by construction.
Eigen::MatrixXd gram_matrix(const BasisFamily& basis, const QuadratureGrid& grid);

// Both Gram matrices; validates region disjointness and finite basis values.
GramPair gram_matrices(const BasisFamily& basis, const Region& omega,
                       const Region& xi);

// Omega-orthonormalizing transform W (columns give tilde(phi)_j = sum_i W_ij
// phi_i) together with the transformed Xi-Gram.
struct OrthonormalBasis {
  Eigen::MatrixXd whitening;    // W with W^T G_Omega W = I
  Eigen::MatrixXd g_tilde_xi;   // W^T G_Xi W
  Eigen::MatrixXd g_omega;      // raw Grams kept for diagnostics
  Eigen::MatrixXd g_xi;

  // Raw coefficients of the function with orthonormal coordinates c.
  Eigen::VectorXd to_raw(const Eigen::VectorXd& c) const { return whitening * c; }
  // Orthonormal coordinates of raw coefficients (solves W c = beta).
  Eigen::VectorXd to_orthonormal(const Eigen::VectorXd& beta) const;
};

OrthonormalBasis orthonormalize_on(const BasisFamily& basis, const Region& omega,
                                   const Region& xi);
OrthonormalBasis orthonormalize_grams(const Eigen::MatrixXd& g_omega,
                                      const Eigen::MatrixXd& g_xi);

}  // namespace anchorex
