#include "anchorex/conditioning.hpp"

#include <cmath>

namespace anchorex {

bool is_orthogonal_on_omega(const Eigen::MatrixXd& g_omega, double tol) {
  const Eigen::Index d = g_omega.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double scale = std::sqrt(g_omega(i, i) * g_omega(j, j));
      if (std::abs(g_omega(i, j)) > tol * scale) return false;
    }
  }
  return true;
}

double kappa_classical(const GramPair& grams) {
  if (!is_orthogonal_on_omega(grams.g_omega)) {
    throw NotOrthogonalOnOmega(
        "classical bound requires a basis orthogonal on the sample region");
  }
  const double d = static_cast<double>(grams.g_omega.rows());
  const double m_omega = grams.g_omega.diagonal().minCoeff();
  const double m_xi_max = grams.g_xi.diagonal().maxCoeff();
  if (!(m_omega > 0.0)) {
    throw SingularGram("a basis function vanishes on the sample region");
  }
  return d * m_xi_max / m_omega;
}

double kappa_spec(const OrthonormalBasis& onb) {
  return symmetric_eigen(onb.g_tilde_xi).values(0);
}

KappaR kappa_r(const GramPair& grams) {
  const Eigen::MatrixXd g_a = grams.g_omega + grams.g_xi;
  const OrthonormalBasis on_a = orthonormalize_grams(g_a, grams.g_xi);
  KappaR out;
  const double d = static_cast<double>(g_a.rows());
  out.m_hat_xi = on_a.g_tilde_xi.diagonal().maxCoeff();
  out.condition_holds = out.m_hat_xi <= 1.0 / d;
  if (out.condition_holds) {
    out.value = d * out.m_hat_xi / (1.0 - d * out.m_hat_xi);
  }
  return out;
}

double certified_radius(double kappa, double e_omega_estimate) {
  if (kappa < 0.0 || e_omega_estimate < 0.0) {
    throw ValidationError("certified_radius needs nonnegative inputs");
  }
  return std::sqrt(kappa) * e_omega_estimate;
}

CertificationReport certify(const BasisFamily& basis, const Region& omega,
                            const Region& xi) {
  const GramPair grams = gram_matrices(basis, omega, xi);
  const OrthonormalBasis onb = orthonormalize_grams(grams.g_omega, grams.g_xi);
  const SymmetricEigen eig = symmetric_eigen(onb.g_tilde_xi);

  CertificationReport report;
  const double d = static_cast<double>(basis.dim());
  report.m_omega = grams.g_omega.diagonal().minCoeff();
  report.m_xi_max = grams.g_xi.diagonal().maxCoeff();
  if (is_orthogonal_on_omega(grams.g_omega)) {
    report.kappa = kappa_classical(grams);
    report.kappa_kind = "classical";
  } else {
    // For non-orthogonal families the classical bound is computed on the
    // whitened family, where m_Omega = 1 by construction.
    report.kappa = d * onb.g_tilde_xi.diagonal().maxCoeff();
    report.kappa_kind = "whitened";
  }
  report.kappa_spec = eig.values(0);
  report.spectrum = eig.values;
  report.top_direction = onb.whitening * eig.vectors.col(0);

  const KappaR kr = kappa_r(grams);
  report.kappa_r = kr.value;
  report.condition_flag_r = kr.condition_holds;
  report.m_hat_xi = kr.m_hat_xi;
  return report;
}

}  // namespace anchorex
