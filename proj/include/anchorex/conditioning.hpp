#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "anchorex/basis.hpp"
#include "anchorex/linalg.hpp"
#include "anchorex/region.hpp"

namespace anchorex {

// The three deterministic extrapolation condition numbers for one
// basis/region configuration, with the spectrum behind the spectral one.
struct CertificationReport {
  double kappa = 0.0;              // d * M_Xi / m_Omega
  std::string kappa_kind;          // "classical" (Omega-orthogonal basis) or
                                   // "whitened" (computed on the orthonormalized family)
  double kappa_spec = 0.0;         // lambda_max of W^T G_Xi W
  std::optional<double> kappa_r;   // d*M_hat/(1 - d*M_hat) when M_hat <= 1/d
  bool condition_flag_r = false;   // M_hat_Xi <= 1/d
  double m_hat_xi = 0.0;           // max_k ||phi_hat_k||_Xi^2, A-orthonormal family
  double m_omega = 0.0;            // min_k ||phi_k||_Omega^2
  double m_xi_max = 0.0;           // max_k ||phi_k||_Xi^2
  Eigen::VectorXd spectrum;        // eigenvalues of G_tilde, descending
  Eigen::VectorXd top_direction;   // raw-basis coefficients of the tight direction
};

// Classical bound d * max_k ||phi_k||_Xi^2 / min_k ||phi_k||_Omega^2; requires
// the family to be orthogonal on Omega (off-diagonal Gram <= 1e-6 relative).
double kappa_classical(const GramPair& grams);

bool is_orthogonal_on_omega(const Eigen::MatrixXd& g_omega, double tol = 1e-6);

// Largest eigenvalue of the orthonormalized Xi-Gram.
double kappa_spec(const OrthonormalBasis& onb);

struct KappaR {
  std::optional<double> value;
  bool condition_holds = false;
  double m_hat_xi = 0.0;
};

// Inner-domain bound from the A = Omega u Xi orthonormal family.
KappaR kappa_r(const GramPair& grams);

// delta = sqrt(kappa) * e_omega.
double certified_radius(double kappa, double e_omega_estimate);

CertificationReport certify(const BasisFamily& basis, const Region& omega,
                            const Region& xi);

}  // namespace anchorex
