#include <Eigen/Dense>

#include "anchorex/linalg.hpp"
#include "anchorex/rng.hpp"
#include "doctest.h"

using namespace anchorex;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  return 0.5 * (a + a.transpose());
}

}  // namespace

TEST_CASE("symmetric_eigen agrees with Eigen's solver") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Eigen::MatrixXd a = random_symmetric(12, seed);
    const SymmetricEigen mine = symmetric_eigen(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    REQUIRE(ref.info() == Eigen::Success);

    // ours descending, Eigen's ascending
    for (int i = 0; i < 12; ++i) {
      CHECK(mine.values(i) ==
            doctest::Approx(ref.eigenvalues()(11 - i)).epsilon(1e-11));
      if (i > 0) CHECK(mine.values(i) <= mine.values(i - 1) + 1e-12);
    }
    // residuals and orthonormality
    for (int i = 0; i < 12; ++i) {
      const Eigen::VectorXd v = mine.vectors.col(i);
      CHECK((a * v - mine.values(i) * v).norm() < 1e-10);
    }
    const Eigen::MatrixXd vtv = mine.vectors.transpose() * mine.vectors;
    CHECK((vtv - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("symmetric_eigen rejects asymmetric input") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  CHECK_THROWS_AS(symmetric_eigen(a), ValidationError);
}

TEST_CASE("cholesky_lower reconstructs SPD matrices") {
  const Eigen::MatrixXd b = random_symmetric(8, 7);
  const Eigen::MatrixXd spd =
      b * b.transpose() + 0.5 * Eigen::MatrixXd::Identity(8, 8);
  const Eigen::MatrixXd l = cholesky_lower(spd);
  CHECK((l * l.transpose() - spd).cwiseAbs().maxCoeff() < 1e-10);
  // strictly lower-triangular structure with positive diagonal
  for (int i = 0; i < 8; ++i) {
    CHECK(l(i, i) > 0.0);
    for (int j = i + 1; j < 8; ++j) CHECK(l(i, j) == 0.0);
  }
}

TEST_CASE("cholesky_lower jitters through marginal matrices, throws on indefinite") {
  // Gram of two nearly identical functions: singular to machine precision.
  Eigen::MatrixXd nearly(2, 2);
  nearly << 1.0, 1.0 - 1e-15, 1.0 - 1e-15, 1.0;
  CHECK_NOTHROW(cholesky_lower(nearly));

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(cholesky_lower(indefinite), SingularGram);
}
