#include <cmath>
#include <numbers>

#include "anchorex/basis.hpp"
#include "anchorex/region.hpp"
#include "doctest.h"

using namespace anchorex;

TEST_CASE("legendre values match the closed forms") {
  auto basis = legendre_affine(5, -1.0, 1.0);
  CHECK(basis->dim() == 5);
  CHECK(basis->ambient_dim() == 1);
  const double x = 0.3;
  double out[5];
  basis->evaluate_point(&x, out);
  CHECK(out[0] == doctest::Approx(1.0));
  CHECK(out[1] == doctest::Approx(0.3));
  CHECK(out[2] == doctest::Approx((3 * 0.09 - 1) / 2.0));
  CHECK(out[3] == doctest::Approx((5 * 0.027 - 3 * 0.3) / 2.0));
  CHECK(out[4] == doctest::Approx(0.0729375).epsilon(1e-12));
}

TEST_CASE("legendre_affine is orthogonal with diag (hi-lo)/(2k+1)") {
  auto basis = legendre_affine(6, 0.0, 3.0);
  const Eigen::MatrixXd g =
      gram_matrix(*basis, build_grid(make_interval(0.0, 3.0, 20001)));
  for (int j = 0; j < 6; ++j) {
    CHECK(g(j, j) == doctest::Approx(3.0 / (2 * j + 1)).epsilon(1e-10));
    for (int k = 0; k < j; ++k) CHECK(std::abs(g(j, k)) < 1e-10);
  }
}

TEST_CASE("chebyshev_affine composes T_k with the affine pullback") {
  auto basis = chebyshev_affine(5, 1.0, 3.0);
  const double x = 2.5;  // maps to u = 0.5
  double out[5];
  basis->evaluate_point(&x, out);
  CHECK(out[0] == doctest::Approx(1.0));
  CHECK(out[1] == doctest::Approx(0.5));
  CHECK(out[2] == doctest::Approx(-0.5));
  CHECK(out[3] == doctest::Approx(-1.0));
  CHECK(out[4] == doctest::Approx(-0.5));
}

TEST_CASE("spherical harmonics: known point values, no Condon-Shortley") {
  auto basis = real_spherical_harmonics(2);
  CHECK(basis->dim() == 9);
  CHECK(basis->ambient_dim() == 3);

  const double c00 = std::sqrt(1.0 / (4.0 * std::numbers::pi));
  const double c1 = std::sqrt(3.0 / (4.0 * std::numbers::pi));

  double north[3] = {0.0, 0.0, 1.0};
  Eigen::VectorXd v(9);
  basis->evaluate_point(north, v.data());
  CHECK(v(0) == doctest::Approx(c00).epsilon(1e-14));   // Y_{0,0}
  CHECK(v(1) == doctest::Approx(0.0));                  // Y_{1,-1}
  CHECK(v(2) == doctest::Approx(c1).epsilon(1e-14));    // Y_{1,0} = c1 z
  CHECK(v(3) == doctest::Approx(0.0));                  // Y_{1,1}

  double px[3] = {1.0, 0.0, 0.0};
  basis->evaluate_point(px, v.data());
  CHECK(v(2) == doctest::Approx(0.0));
  CHECK(v(3) == doctest::Approx(c1).epsilon(1e-14));    // Y_{1,1} = c1 x
  // Y_{2,2} = (1/4) sqrt(15/pi) (x^2 - y^2)
  CHECK(v(8) == doctest::Approx(0.25 * std::sqrt(15.0 / std::numbers::pi))
                    .epsilon(1e-12));

  double py[3] = {0.0, 1.0, 0.0};
  basis->evaluate_point(py, v.data());
  CHECK(v(1) == doctest::Approx(c1).epsilon(1e-14));    // Y_{1,-1} = c1 y
  CHECK(v(8) == doctest::Approx(-0.25 * std::sqrt(15.0 / std::numbers::pi))
                    .epsilon(1e-12));
}

TEST_CASE("spherical harmonics are orthonormal over the full sphere") {
  auto basis = real_spherical_harmonics(2);
  const Region sphere =
      make_sphere_patch(0.0, std::numbers::pi, 0.0, 2.0 * std::numbers::pi, 201, 401);
  const Eigen::MatrixXd g = gram_matrix(*basis, build_grid(sphere));
  // Simpson error in theta at this resolution is ~1e-7.
  CHECK((g - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("sine2d products are L2(0,1)^2-orthonormal") {
  auto basis = sine2d_full(3);
  CHECK(basis->dim() == 9);
  CHECK(basis->ambient_dim() == 2);

  double p[2] = {0.25, 0.5};
  Eigen::VectorXd v(9);
  basis->evaluate_point(p, v.data());
  // mode (1,1) is index 0: 2 sin(pi/4) sin(pi/2) = sqrt(2)
  CHECK(v(0) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
  // mode (2,1) is index 3: 2 sin(pi/2) sin(pi/2) = 2
  CHECK(v(3) == doctest::Approx(2.0).epsilon(1e-14));

  const Eigen::MatrixXd g =
      gram_matrix(*basis, build_grid(make_rect2d(0.0, 1.0, 0.0, 1.0, 201, 201)));
  CHECK((g - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("synthesize matches a manual weighted sum") {
  auto basis = legendre_affine(3, -1.0, 1.0);
  const QuadratureGrid grid = build_grid(make_interval(-1.0, 1.0, 5));
  Eigen::VectorXd coeffs(3);
  coeffs << 2.0, -1.0, 0.5;
  const Eigen::VectorXd values = basis->synthesize(coeffs, grid);
  REQUIRE(values.size() == 5);
  for (int i = 0; i < 5; ++i) {
    const double x = grid.points(i, 0);
    const double expect = 2.0 - x + 0.5 * (3 * x * x - 1) / 2.0;
    CHECK(values(i) == doctest::Approx(expect).epsilon(1e-14));
  }
  const Eigen::MatrixXd m = basis->evaluate(grid);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 5);
}

TEST_CASE("gram_matrices validates disjointness") {
  auto basis = legendre_affine(3, -1.0, 1.0);
  CHECK_THROWS_AS(gram_matrices(*basis, make_interval(-1.0, 0.5, 11),
                                make_interval(0.4, 1.0, 11)),
                  ValidationError);
}

TEST_CASE("orthonormalize_on whitens the Omega Gram") {
  auto basis = legendre_affine(8, -1.0, 1.0);
  const OrthonormalBasis onb = orthonormalize_on(
      *basis, make_interval(-1.0, 0.8, 2001), make_interval(0.8, 1.0, 2001));
  const Eigen::MatrixXd eye =
      onb.whitening.transpose() * onb.g_omega * onb.whitening;
  CHECK((eye - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((onb.g_tilde_xi - onb.g_tilde_xi.transpose()).cwiseAbs().maxCoeff() <
        1e-12);

  // coordinate maps invert each other
  Eigen::VectorXd c(8);
  c << 1, -2, 3, 0.5, 0, 4, -1, 0.25;
  const Eigen::VectorXd round = onb.to_orthonormal(onb.to_raw(c));
  CHECK((round - c).cwiseAbs().maxCoeff() < 1e-9);

  // whitened norms: ||g||_Omega^2 of orthonormal coords c is |c|^2
  const Eigen::VectorXd raw = onb.to_raw(c);
  CHECK(raw.dot(onb.g_omega * raw) ==
        doctest::Approx(c.squaredNorm()).epsilon(1e-10));
}
