#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "anchorex/errors.hpp"

namespace anchorex {

// Nodes (one per row, in ambient coordinates) plus strictly positive Simpson
// weights that sum to the region's measure.
struct QuadratureGrid {
  Eigen::MatrixXd points;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return points.rows(); }
  int dim() const { return static_cast<int>(points.cols()); }
};

enum class RegionKind {
  interval,
  interval_union,
  sphere_patch,
  rect2d,
  rect2d_minus_patch,
};

// A quadrature-equipped sample or extrapolation region.
//   interval:            bounds = {lo,hi}, resolution = {n}
//   interval_union:      one {lo,hi} per piece, one odd n per piece
//   sphere_patch:        bounds = {theta_lo,theta_hi},{phi_lo,phi_hi} on S^2,
//                        resolution = {n_theta, n_phi}; points embedded in R^3
//   rect2d:              bounds = {x0,x1},{y0,y1}, resolution = {nx, ny}
//   rect2d_minus_patch:  outer rect then excluded rect; the excluded nodes are
//                        dropped via a panel-aligned split into sub-rectangles
//                        so the remaining weights still sum to the measure.
struct Region {
  RegionKind kind;
  std::vector<std::array<double, 2>> bounds;
  std::vector<int> resolution;

  double measure() const;
  int ambient_dim() const;
};

Region make_interval(double lo, double hi, int n);
Region make_interval_union(std::vector<std::array<double, 2>> pieces,
                           std::vector<int> resolution);
Region make_sphere_patch(double theta_lo, double theta_hi, double phi_lo,
                         double phi_hi, int n_theta, int n_phi);
Region make_rect2d(double x0, double x1, double y0, double y1, int nx, int ny);
Region make_rect2d_minus_patch(double x0, double x1, double y0, double y1,
                               double ex0, double ex1, double ey0, double ey1,
                               int nx, int ny);

QuadratureGrid build_grid(const Region& region);

// Disjoint-union grid for A = Omega u Xi.
QuadratureGrid concat_grids(const QuadratureGrid& a, const QuadratureGrid& b);

// Rejects region pairs whose overlap has positive measure.
void require_disjoint(const Region& omega, const Region& xi);

double inner_product(const QuadratureGrid& grid, const Eigen::VectorXd& f,
                     const Eigen::VectorXd& g);

// Root error sqrt(sum w_i (f_i - g_i)^2); the squared value is the error
// functional E_D.
double error_norm(const QuadratureGrid& grid, const Eigen::VectorXd& f,
                  const Eigen::VectorXd& g);

double grid_norm(const QuadratureGrid& grid, const Eigen::VectorXd& f);

}  // namespace anchorex
