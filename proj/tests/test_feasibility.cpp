#include <Eigen/Dense>
#include <cmath>
#include <set>

#include "anchorex/basis.hpp"
#include "anchorex/errors.hpp"
#include "anchorex/feasibility.hpp"
#include "anchorex/fitting.hpp"
#include "anchorex/rng.hpp"
#include "doctest.h"

using namespace anchorex;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::MatrixXd random_spd(int d, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.gaussian();
  return m * m.transpose() + Eigen::MatrixXd::Identity(d, d);
}

}  // namespace

TEST_CASE("xi_distance is the metric-induced norm of the difference") {
  Eigen::MatrixXd metric(2, 2);
  metric << 2.0, 0.5, 0.5, 1.0;
  const Eigen::VectorXd a = vec2(1.0, 0.0);
  const Eigen::VectorXd b = vec2(0.0, 1.0);
  // u = a - b = (1,-1): u^T M u = 2 - 0.5 - 0.5 + 1 = 2
  CHECK(xi_distance(a, b, metric) == doctest::Approx(std::sqrt(2.0)));
  CHECK(xi_distance(a, a, metric) == doctest::Approx(0.0));
}

TEST_CASE("project_ball: interior points are returned untouched") {
  Anchor anchor{vec2(0.0, 0.0), 1.0, "prior_bound"};
  const Eigen::MatrixXd metric = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::VectorXd g = vec2(0.3, 0.4);  // norm 0.5 < 1

  const ProjectionResult res = project_ball(g, anchor, metric);
  CHECK((res.h - g).norm() == 0.0);
  CHECK(res.delta_dist == doctest::Approx(0.0));
  REQUIRE(res.improvement_lower.has_value());
  CHECK(*res.improvement_lower == doctest::Approx(0.0));
  CHECK(*res.improvement_upper == doctest::Approx(0.0));

  // Boundary counts as inside.
  const ProjectionResult edge = project_ball(vec2(1.0, 0.0), anchor, metric);
  CHECK((edge.h - vec2(1.0, 0.0)).norm() == 0.0);
}

TEST_CASE("project_ball: exterior points land on the boundary, radially") {
  Anchor anchor{vec2(1.0, 2.0), 0.5, "prior_bound"};
  const Eigen::MatrixXd metric = random_spd(2, 5);
  const Eigen::VectorXd g = vec2(4.0, -1.0);

  const ProjectionResult res = project_ball(g, anchor, metric);
  CHECK(xi_distance(res.h, anchor.coeffs, metric) == doctest::Approx(0.5));
  // h - a is parallel to g - a.
  const Eigen::VectorXd u = res.h - anchor.coeffs;
  const Eigen::VectorXd v = g - anchor.coeffs;
  CHECK(std::abs(u(0) * v(1) - u(1) * v(0)) < 1e-12);
  CHECK(res.delta_dist ==
        doctest::Approx(xi_distance(g, anchor.coeffs, metric) - 0.5));

  // Idempotence: projecting the projection is a no-op.
  const ProjectionResult again = project_ball(res.h, anchor, metric);
  CHECK((again.h - res.h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("project_ball: hand-computed improvement interval") {
  // a = 0, delta = 1, g = (2,0): h = (1,0), Delta = 1.
  // The truth f = (0.5, 0.5) is inside the ball, so the projection must
  // improve by an amount inside [Delta sqrt(Delta/(delta+Delta)), Delta].
  Anchor anchor{vec2(0.0, 0.0), 1.0, "prior_bound"};
  const Eigen::MatrixXd metric = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::VectorXd g = vec2(2.0, 0.0);
  const Eigen::VectorXd f = vec2(0.5, 0.5);

  const ProjectionResult res = project_ball(g, anchor, metric);
  CHECK((res.h - vec2(1.0, 0.0)).cwiseAbs().maxCoeff() < 1e-12);
  REQUIRE(res.improvement_lower.has_value());
  CHECK(*res.improvement_lower == doctest::Approx(std::sqrt(0.5)));
  CHECK(*res.improvement_upper == doctest::Approx(1.0));

  const double before = xi_distance(g, f, metric);   // sqrt(2.25 + 0.25)
  const double after = xi_distance(res.h, f, metric);  // sqrt(0.25 + 0.25)
  const double gain = before - after;
  CHECK(gain >= *res.improvement_lower - 1e-12);
  CHECK(gain <= *res.improvement_upper + 1e-12);
}

TEST_CASE("project_intersection with one ball matches the closed form") {
  const Eigen::MatrixXd metric = random_spd(3, 9);
  Anchor anchor{Eigen::VectorXd::Zero(3), 0.8, "prior_bound"};
  FeasibleSet fs{{anchor}, metric};
  Rng rng(10);
  Eigen::VectorXd g(3);
  for (int i = 0; i < 3; ++i) g(i) = 2.0 + rng.uniform();

  const ProjectionResult direct = project_ball(g, anchor, metric);
  const ProjectionResult dykstra = project_intersection(g, fs);
  CHECK((direct.h - dykstra.h).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(dykstra.converged);
}

TEST_CASE("project_intersection: two-ball lens, Euclidean oracle") {
  // Balls B((0,0),1) and B((1.5,0),1) under the identity metric. For
  // g = (0.75, 2) the nearest lens point is the upper corner
  // (0.75, sqrt(1 - 0.75^2)) by symmetry.
  FeasibleSet fs;
  fs.xi_metric = Eigen::MatrixXd::Identity(2, 2);
  fs.anchors.push_back({vec2(0.0, 0.0), 1.0, "prior_bound"});
  fs.anchors.push_back({vec2(1.5, 0.0), 1.0, "prior_bound"});
  const Eigen::VectorXd g = vec2(0.75, 2.0);

  const ProjectionResult res = project_intersection(g, fs, 1e-12);
  const double y_star = std::sqrt(1.0 - 0.5625);  // sqrt(7)/4
  CHECK(res.h(0) == doctest::Approx(0.75).epsilon(1e-8));
  CHECK(res.h(1) == doctest::Approx(y_star).epsilon(1e-8));
  CHECK(res.delta_dist == doctest::Approx(2.0 - y_star).epsilon(1e-8));
  CHECK(membership(res.h, fs, 1e-8));
  CHECK(res.converged);
}

TEST_CASE("project_intersection satisfies the obtuse-angle optimality test") {
  // <g - h, x - h>_Xi <= 0 for every feasible x characterizes the metric
  // projection onto a convex set.
  const Eigen::MatrixXd metric = random_spd(4, 13);
  FeasibleSet fs;
  fs.xi_metric = metric;
  Rng rng(14);
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXd c(4);
    for (int i = 0; i < 4; ++i) c(i) = 0.1 * rng.gaussian();
    fs.anchors.push_back({c, 2.0 + rng.uniform(), "prior_bound"});
  }
  Eigen::VectorXd g(4);
  for (int i = 0; i < 4; ++i) g(i) = 5.0 * rng.gaussian();

  const ProjectionResult res = project_intersection(g, fs, 1e-12);
  REQUIRE(membership(res.h, fs, 1e-7));
  const Eigen::VectorXd gh = g - res.h;
  const auto check_angle = [&](const Eigen::VectorXd& x) {
    const double angle = gh.dot(metric * (x - res.h));
    CHECK(angle <= 1e-6 * std::max(1.0, gh.norm() * (x - res.h).norm()));
  };

  // The tightly clustered centers are feasible by construction.
  for (const auto& anchor : fs.anchors) {
    REQUIRE(membership(anchor.coeffs, fs, 0.0));
    check_angle(anchor.coeffs);
  }
  int feasible_probes = 0;
  for (int t = 0; t < 400; ++t) {
    Eigen::VectorXd x = fs.anchors[t % 3].coeffs;
    for (int i = 0; i < 4; ++i) x(i) += 0.2 * rng.gaussian();
    if (!membership(x, fs, 0.0)) continue;
    ++feasible_probes;
    check_angle(x);
  }
  CHECK(feasible_probes > 20);
}

TEST_CASE("project_intersection flags empty intersections") {
  FeasibleSet fs;
  fs.xi_metric = Eigen::MatrixXd::Identity(2, 2);
  fs.anchors.push_back({vec2(0.0, 0.0), 1.0, "prior_bound"});
  fs.anchors.push_back({vec2(5.0, 0.0), 1.0, "prior_bound"});  // disjoint
  CHECK_THROWS_AS(project_intersection(vec2(2.5, 3.0), fs),
                  EmptyIntersectionSuspected);
}

TEST_CASE("membership and diameter_bound") {
  FeasibleSet fs;
  fs.xi_metric = Eigen::MatrixXd::Identity(2, 2);
  fs.anchors.push_back({vec2(0.0, 0.0), 2.0, "prior_bound"});
  fs.anchors.push_back({vec2(1.0, 0.0), 0.5, "prior_bound"});

  CHECK(membership(vec2(1.0, 0.3), fs));
  CHECK_FALSE(membership(vec2(0.0, 1.0), fs));     // violates the small ball
  CHECK(membership(vec2(1.5, 0.0), fs, 1e-9));     // boundary of both
  CHECK(diameter_bound(fs) == doctest::Approx(1.0));  // 2 * 0.5
}

TEST_CASE("create_anchors: count, distinct subsets, radii, provenance") {
  auto basis = legendre_affine(8, -1.0, 1.0);
  const Region omega = make_interval(-1.0, 0.5, 801);
  const Region xi = make_interval(0.5, 1.0, 801);
  Eigen::VectorXd truth = Eigen::VectorXd::Zero(8);
  truth(0) = 1.0;
  truth(2) = -0.5;
  const SampleSet samples = synthesize_samples(
      *basis, truth, omega, 60, SampleLayout::uniform_random, {0.05, NAN}, 77);

  const auto anchors =
      create_anchors(*basis, omega, xi, samples, 4, 6, CertificateKind::spec, 5);
  REQUIRE(anchors.size() == 6);
  std::set<std::vector<int>> supports;
  for (const auto& a : anchors) {
    CHECK(a.coeffs.size() == 8);
    CHECK(a.delta > 0.0);
    CHECK(a.provenance == "certified_spec");
    std::vector<int> support;
    for (int i = 0; i < 8; ++i)
      if (a.coeffs(i) != 0.0) support.push_back(i);
    CHECK(support.size() <= 4);  // coefficients live on the drawn subset
    supports.insert(support);
  }
  CHECK(supports.size() == 6);  // subsets are deduplicated

  // The inner certificate only exists when m * M_hat <= 1, so give it a
  // narrow extrapolation region and small subsets.
  auto basis6 = legendre_affine(6, -1.0, 1.0);
  const Region omega6 = make_interval(-1.0, 0.8, 801);
  const Region xi6 = make_interval(0.8, 0.9, 801);
  Eigen::VectorXd truth6 = Eigen::VectorXd::Zero(6);
  truth6(1) = 1.0;
  const SampleSet samples6 = synthesize_samples(
      *basis6, truth6, omega6, 50, SampleLayout::uniform_random, {0.02, NAN}, 3);
  const auto inner = create_anchors(*basis6, omega6, xi6, samples6, 2, 3,
                                    CertificateKind::inner, 5);
  REQUIRE(inner.size() == 3);
  for (const auto& a : inner) CHECK(a.provenance == "certified_inner");
}

TEST_CASE("create_anchors exhausts its budget when too few subsets exist") {
  auto basis = legendre_affine(3, -1.0, 1.0);
  const Region omega = make_interval(-1.0, 0.0, 201);
  const Region xi = make_interval(0.25, 1.0, 201);
  Eigen::VectorXd truth = Eigen::VectorXd::Ones(3);
  const SampleSet samples = synthesize_samples(
      *basis, truth, omega, 30, SampleLayout::uniform_random, {0.0, NAN}, 1);
  // Only C(3,2) = 3 distinct subsets but 5 anchors requested.
  CHECK_THROWS_AS(create_anchors(*basis, omega, xi, samples, 2, 5,
                                 CertificateKind::spec, 2),
                  NumericalError);
}

TEST_CASE("appendix_lemma_d: two-sided bound and attainment") {
  const double p = 3.0;
  const double r = 1.0;
  const double lower = std::pow(p - r, 1.5) / std::sqrt(p);
  const double upper = p - r;

  Rng rng(2026);
  for (int t = 0; t < 2000; ++t) {
    const double rad = r * std::sqrt(rng.uniform());
    const double ang = rng.uniform(0.0, 2.0 * M_PI);
    const double x = rad * std::cos(ang);
    const double y = rad * std::sin(ang);
    const double d = appendix_lemma_d(p, r, x, y);
    CHECK(d >= lower - 1e-12);
    CHECK(d <= upper + 1e-12);
  }

  // Upper bound is attained on the axis (y = 0, any x in [-R, R]).
  CHECK(appendix_lemma_d(p, r, 0.3, 0.0) == doctest::Approx(upper));
  CHECK(appendix_lemma_d(p, r, -r, 0.0) == doctest::Approx(upper));

  // Lower bound is attained at x* = R(p+R)/(2p) on the circle |.| = R.
  const double x_star = r * (p + r) / (2.0 * p);
  const double y_star = std::sqrt(r * r - x_star * x_star);
  CHECK(appendix_lemma_d(p, r, x_star, y_star) ==
        doctest::Approx(lower).epsilon(1e-10));
  CHECK(appendix_lemma_d(p, r, x_star, -y_star) ==
        doctest::Approx(lower).epsilon(1e-10));
}

TEST_CASE("appendix_lemma_d rejects out-of-domain arguments") {
  CHECK_THROWS_AS(appendix_lemma_d(1.0, 2.0, 0.0, 0.0), ValidationError);  // p <= R
  CHECK_THROWS_AS(appendix_lemma_d(2.0, 0.0, 0.0, 0.0), ValidationError);  // R <= 0
  CHECK_THROWS_AS(appendix_lemma_d(3.0, 1.0, 1.2, 0.0), ValidationError);  // outside
  CHECK_NOTHROW(appendix_lemma_d(3.0, 1.0, 1.0, 0.0));  // closed-disk boundary
}
