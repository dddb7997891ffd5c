#include <cmath>

#include "anchorex/basis.hpp"
#include "anchorex/conditioning.hpp"
#include "anchorex/rng.hpp"
#include "doctest.h"

using namespace anchorex;

TEST_CASE("certify on {1, x}: closed-form kappa, kappa_spec, and tightness") {
  // Omega = [-1,1], Xi = [1,2]. Exact Grams:
  //   G_Omega = diag(2, 2/3)                (odd/even orthogonality)
  //   G_Xi    = [[1, 3/2], [3/2, 7/3]]
  // Whitened G~ = [[1/2, 3 sqrt(3)/4], [3 sqrt(3)/4, 7/2]].
  auto basis = legendre_affine(2, -1.0, 1.0);
  const Region omega = make_interval(-1.0, 1.0, 2001);
  const Region xi = make_interval(1.0, 2.0, 2001);
  const CertificationReport report = certify(*basis, omega, xi);

  const double lam_max = 2.0 + std::sqrt(2.25 + 27.0 / 16.0);
  CHECK(report.kappa_spec == doctest::Approx(lam_max).epsilon(1e-9));
  CHECK(report.kappa_kind == "classical");
  // d * max ||phi||_Xi^2 / min ||phi||_Omega^2 = 2 * (7/3) / (2/3) = 7
  CHECK(report.kappa == doctest::Approx(7.0).epsilon(1e-9));
  CHECK(report.m_omega == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(report.m_xi_max == doctest::Approx(7.0 / 3.0).epsilon(1e-9));
  CHECK(report.kappa_spec <= report.kappa);
  CHECK(report.spectrum.size() == 2);
  CHECK(report.spectrum(0) >= report.spectrum(1));

  // The reported top direction attains the spectral ratio.
  const GramPair grams = gram_matrices(*basis, omega, xi);
  const Eigen::VectorXd t = report.top_direction;
  const double ratio =
      t.dot(grams.g_xi * t) / t.dot(grams.g_omega * t);
  CHECK(ratio == doctest::Approx(report.kappa_spec).epsilon(1e-9));
}

TEST_CASE("random directions never beat kappa_spec; dominance holds") {
  auto basis = legendre_affine(7, -1.0, 0.6);
  const Region omega = make_interval(-1.0, 0.6, 1201);
  const Region xi = make_interval(0.6, 1.0, 1201);
  const CertificationReport report = certify(*basis, omega, xi);
  const GramPair grams = gram_matrices(*basis, omega, xi);

  CHECK(report.kappa_spec <= report.kappa * (1.0 + 1e-12));

  Rng rng(314);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd c(7);
    for (int i = 0; i < 7; ++i) c(i) = rng.gaussian();
    const double ratio = c.dot(grams.g_xi * c) / c.dot(grams.g_omega * c);
    CHECK(ratio <= report.kappa_spec * (1.0 + 1e-10));
  }
}

TEST_CASE("classical kappa requires Omega-orthogonality") {
  // Chebyshev polynomials are not L2(Omega)-orthogonal.
  auto cheb = chebyshev_affine(5, -1.0, 0.5);
  const GramPair grams = gram_matrices(*cheb, make_interval(-1.0, 0.5, 801),
                                       make_interval(0.5, 1.0, 801));
  CHECK_FALSE(is_orthogonal_on_omega(grams.g_omega));
  CHECK_THROWS_AS(kappa_classical(grams), NotOrthogonalOnOmega);

  // certify falls back to the whitened family instead of throwing
  const CertificationReport report =
      certify(*cheb, make_interval(-1.0, 0.5, 801), make_interval(0.5, 1.0, 801));
  CHECK(report.kappa_kind == "whitened");
  CHECK(report.kappa_spec <= report.kappa * (1.0 + 1e-12));
}

TEST_CASE("is_orthogonal_on_omega tolerance is relative") {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(3, 3) * 5.0;
  CHECK(is_orthogonal_on_omega(g));
  g(0, 1) = g(1, 0) = 5.0 * 1e-3;
  CHECK_FALSE(is_orthogonal_on_omega(g));
  g(0, 1) = g(1, 0) = 5.0 * 1e-7;
  CHECK(is_orthogonal_on_omega(g));
}

TEST_CASE("kappa_r: valid only when d*M_hat <= 1, and then upper-bounds the ratio") {
  // Small d and a small extrapolation region keep M_hat below 1/d.
  auto basis = legendre_affine(2, -1.0, 1.0);
  const Region omega = make_interval(-1.0, 0.8, 1201);
  const Region xi = make_interval(0.8, 1.0, 1201);
  const GramPair grams = gram_matrices(*basis, omega, xi);
  const KappaR kr = kappa_r(grams);
  REQUIRE(kr.condition_holds);
  REQUIRE(kr.value.has_value());
  CHECK(kr.m_hat_xi <= 0.5);
  CHECK(*kr.value == doctest::Approx(2.0 * kr.m_hat_xi / (1.0 - 2.0 * kr.m_hat_xi))
                         .epsilon(1e-12));

  // kappa_r dominates the exact spectral constant
  const CertificationReport report = certify(*basis, omega, xi);
  CHECK(*kr.value >= report.kappa_spec * (1.0 - 1e-10));

  // Large d on a wide Xi violates the condition; no value is produced.
  auto big = legendre_affine(12, -1.0, 0.0);
  const KappaR invalid = kappa_r(
      gram_matrices(*big, make_interval(-1.0, 0.0, 1201), make_interval(0.0, 1.0, 1201)));
  CHECK_FALSE(invalid.condition_holds);
  CHECK_FALSE(invalid.value.has_value());
}

TEST_CASE("certified_radius is sqrt(kappa) times the error estimate") {
  CHECK(certified_radius(4.0, 0.5) == doctest::Approx(1.0));
  CHECK(certified_radius(309.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("geomagnetic configuration reproduces the d=8 spectral constant") {
  auto basis = legendre_affine(8, -1.0, 1.0);
  const CertificationReport report = certify(
      *basis, make_interval(-1.0, 0.8, 2001), make_interval(0.8, 1.0, 2001));
  CHECK(report.kappa_spec == doctest::Approx(309.0).epsilon(0.05));
}
