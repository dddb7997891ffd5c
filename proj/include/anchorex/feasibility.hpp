#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anchorex/basis.hpp"
#include "anchorex/fitting.hpp"
#include "anchorex/region.hpp"

namespace anchorex {

// An anchor function (coefficients in the raw basis) with a certified radius.
struct Anchor {
  Eigen::VectorXd coeffs;
  double delta = 0.0;
  std::string provenance;  // e.g. "prior_bound", "certified_spec",
                           // "certified_inner", "probabilistic(0.7)"
};

// Intersection of anchor balls in the norm induced by xi_metric = G_Xi.
struct FeasibleSet {
  std::vector<Anchor> anchors;
  Eigen::MatrixXd xi_metric;
};

struct ProjectionResult {
  Eigen::VectorXd h;
  double delta_dist = 0.0;  // ||g - h||_Xi
  // Theorem-grade improvement interval; populated for single-ball
  // projections only.
  std::optional<double> improvement_lower;
  std::optional<double> improvement_upper;
  int iterations = 0;
  bool converged = true;
};

double xi_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                   const Eigen::MatrixXd& xi_metric);

// Closed-form metric projection onto one ball; the boundary counts as inside.
ProjectionResult project_ball(const Eigen::VectorXd& g, const Anchor& anchor,
                              const Eigen::MatrixXd& xi_metric);

// Dykstra's alternating projections in the Xi inner product. Returns the best
// iterate flagged unconverged after max_iter cycles; throws
// EmptyIntersectionSuspected when the constraint violation stalls above
// tol * 1e3.
ProjectionResult project_intersection(const Eigen::VectorXd& g,
                                      const FeasibleSet& fs, double tol = 1e-10,
                                      int max_iter = 10000);

bool membership(const Eigen::VectorXd& g, const FeasibleSet& fs,
                double slack = 1e-9);

// 2 * min delta_i: certified bound on ||f - g||_Xi for members g.
double diameter_bound(const FeasibleSet& fs);

enum class CertificateKind { spec, inner };

// Algorithm-1 anchors: random m-subsets of basis functions, LS fit on the
// subset, radius sqrt(kappa) * Ẽ_Omega from the chosen certificate on the
// sub-family. Deduplicates subsets; retries up to 100*M draws.
std::vector<Anchor> create_anchors(const BasisFamily& basis, const Region& omega,
                                   const Region& xi, const SampleSet& samples,
                                   int m, int count, CertificateKind certificate,
                                   std::uint64_t seed);

// d(p,R,x,y) = sqrt((p-x)^2 + y^2) - sqrt((R-x)^2 + y^2) for p > R > 0 and
// x^2 + y^2 <= R^2; bounded by [(p-R)^{3/2}/sqrt(p), p-R].
double appendix_lemma_d(double p, double r, double x, double y);

}  // namespace anchorex
