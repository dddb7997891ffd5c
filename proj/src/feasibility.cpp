#include "anchorex/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "anchorex/conditioning.hpp"
#include "anchorex/rng.hpp"

namespace anchorex {
namespace {

void fill_single_ball_bounds(ProjectionResult& result, double delta) {
  const double d = result.delta_dist;
  if (d <= 0.0) {
    result.improvement_lower = 0.0;
    result.improvement_upper = 0.0;
    return;
  }
  result.improvement_lower = d * std::sqrt(d / (delta + d));
  result.improvement_upper = d;
}

}  // namespace

double xi_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                   const Eigen::MatrixXd& xi_metric) {
  if (a.size() != b.size() || a.size() != xi_metric.rows()) {
    throw ValidationError("coefficient/metric size mismatch");
  }
  const Eigen::VectorXd diff = a - b;
  const double sq = diff.dot(xi_metric * diff);
  return std::sqrt(std::max(0.0, sq));
}

ProjectionResult project_ball(const Eigen::VectorXd& g, const Anchor& anchor,
                              const Eigen::MatrixXd& xi_metric) {
  const double dist = xi_distance(g, anchor.coeffs, xi_metric);
  ProjectionResult result;
  result.iterations = 0;
  result.converged = true;
  if (dist <= anchor.delta) {
    result.h = g;
    result.delta_dist = 0.0;
    fill_single_ball_bounds(result, anchor.delta);
    return result;
  }
  result.h = anchor.coeffs + (anchor.delta / dist) * (g - anchor.coeffs);
  result.delta_dist = dist - anchor.delta;
  fill_single_ball_bounds(result, anchor.delta);
  return result;
}

ProjectionResult project_intersection(const Eigen::VectorXd& g,
                                      const FeasibleSet& fs, double tol,
                                      int max_iter) {
  if (fs.anchors.empty()) throw ValidationError("feasible set has no anchors");
  const std::size_t m = fs.anchors.size();
  if (m == 1) return project_ball(g, fs.anchors[0], fs.xi_metric);

  const Eigen::MatrixXd& metric = fs.xi_metric;
  Eigen::VectorXd x = g;
  std::vector<Eigen::VectorXd> corrections(
      m, Eigen::VectorXd::Zero(g.size()));

  const auto violation = [&](const Eigen::VectorXd& point) {
    double worst = 0.0;
    for (const auto& anchor : fs.anchors) {
      worst = std::max(worst,
                       xi_distance(point, anchor.coeffs, metric) - anchor.delta);
    }
    return worst;
  };

  ProjectionResult result;
  result.converged = false;
  double previous_violation = std::numeric_limits<double>::infinity();
  int stalled_cycles = 0;
  int cycle = 0;
  for (; cycle < max_iter; ++cycle) {
    const Eigen::VectorXd x_before = x;
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::VectorXd y = x + corrections[i];
      const ProjectionResult step = project_ball(y, fs.anchors[i], metric);
      corrections[i] = y - step.h;
      x = step.h;
    }
    const double move = xi_distance(x, x_before, metric);
    if (move <= tol) {
      result.converged = true;
      ++cycle;
      break;
    }
    // Stall watch: a persistently large constraint violation that stops
    // improving suggests the balls do not intersect.
    const double v = violation(x);
    if (v > tol * 1e3) {
      if (v > previous_violation * (1.0 - 1e-12)) {
        if (++stalled_cycles > 200) {
          std::fprintf(stderr,
                       "[dykstra-debug] cycle=%d v=%.17g prev=%.17g move=%.17g "
                       "tol=%g\n",
                       cycle, v, previous_violation, move, tol);
          throw EmptyIntersectionSuspected(
              "Dykstra violation stalled; the anchor balls may not intersect");
        }
      } else {
        stalled_cycles = 0;
      }
      previous_violation = v;
    } else {
      stalled_cycles = 0;
      previous_violation = v;
    }
  }
  result.h = x;
  result.delta_dist = xi_distance(g, x, metric);
  result.iterations = cycle;
  return result;
}

bool membership(const Eigen::VectorXd& g, const FeasibleSet& fs, double slack) {
  for (const auto& anchor : fs.anchors) {
    if (xi_distance(g, anchor.coeffs, fs.xi_metric) > anchor.delta + slack) {
      return false;
    }
  }
  return true;
}

double diameter_bound(const FeasibleSet& fs) {
  if (fs.anchors.empty()) throw ValidationError("feasible set has no anchors");
  double min_delta = fs.anchors[0].delta;
  for (const auto& anchor : fs.anchors) min_delta = std::min(min_delta, anchor.delta);
  return 2.0 * min_delta;
}

std::vector<Anchor> create_anchors(const BasisFamily& basis, const Region& omega,
                                   const Region& xi, const SampleSet& samples,
                                   int m, int count, CertificateKind certificate,
                                   std::uint64_t seed) {
  const int d = basis.dim();
  if (m < 1 || m > d) throw ValidationError("subset size must satisfy 1 <= m <= d");
  if (count < 1) throw ValidationError("anchor count must be >= 1");

  const GramPair grams = gram_matrices(basis, omega, xi);
  const Eigen::MatrixXd full_design = design_matrix(basis, samples.points);
  const double omega_measure = omega.measure();

  Rng rng(seed);
  std::set<std::vector<int>> used;
  std::vector<Anchor> anchors;
  const int budget = 100 * count;
  for (int attempt = 0;
       attempt < budget && static_cast<int>(anchors.size()) < count; ++attempt) {
    // Partial Fisher-Yates draw of m distinct indices.
    std::vector<int> pool(d);
    for (int i = 0; i < d; ++i) pool[i] = i;
    for (int i = 0; i < m; ++i) {
      const auto j = i + static_cast<int>(rng.next_below(d - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> subset(pool.begin(), pool.begin() + m);
    std::sort(subset.begin(), subset.end());
    if (!used.insert(subset).second) continue;

    GramPair sub;
    sub.g_omega.resize(m, m);
    sub.g_xi.resize(m, m);
    Eigen::MatrixXd sub_design(samples.points.rows(), m);
    for (int i = 0; i < m; ++i) {
      sub_design.col(i) = full_design.col(subset[i]);
      for (int j = 0; j < m; ++j) {
        sub.g_omega(i, j) = grams.g_omega(subset[i], subset[j]);
        sub.g_xi(i, j) = grams.g_xi(subset[i], subset[j]);
      }
    }

    double kappa = 0.0;
    if (certificate == CertificateKind::spec) {
      kappa = kappa_spec(orthonormalize_grams(sub.g_omega, sub.g_xi));
    } else {
      const KappaR kr = kappa_r(sub);
      if (!kr.condition_holds) continue;  // infeasible subset: redraw
      kappa = *kr.value;
    }

    const FitResult fit = fit_ls(sub_design, samples.values);
    const double e_omega = empirical_e_omega(sub_design, samples.values,
                                             fit.coeffs, omega_measure);
    Anchor anchor;
    anchor.coeffs = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < m; ++i) anchor.coeffs(subset[i]) = fit.coeffs(i);
    anchor.delta = certified_radius(kappa, e_omega);
    anchor.provenance = certificate == CertificateKind::spec ? "certified_spec"
                                                             : "certified_inner";
    anchors.push_back(std::move(anchor));
  }
  if (static_cast<int>(anchors.size()) < count) {
    throw NumericalError("anchor generation exhausted its retry budget");
  }
  return anchors;
}

double appendix_lemma_d(double p, double r, double x, double y) {
  if (!(p > r && r > 0.0)) {
    throw ValidationError("lemma domain requires p > R > 0");
  }
  if (x * x + y * y > r * r * (1.0 + 1e-12)) {
    throw ValidationError("lemma point must lie in the closed disk of radius R");
  }
  return std::sqrt((p - x) * (p - x) + y * y) -
         std::sqrt((r - x) * (r - x) + y * y);
}

}  // namespace anchorex
