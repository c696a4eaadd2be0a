/**
 * @file prestress.hpp
 * @brief Self stresses, stress and stiffness matrices, and the prestress certificate.
 *
 * A self stress w satisfies w^T dg|_p = 0. Its stress matrix is the w-weighted graph
 * Laplacian spread over the d coordinates, Omega_w = (A^T diag(w) A) (x) I_d. The framework
 * is certified prestress rigid when some combination of stresses makes Omega positive
 * definite on the flex space F (rigid motions projected out).
 */
#pragma once

#include "tensegrity/framework.hpp"
#include "tensegrity/rigidity.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace tensegrity {

struct SelfStress {
    Eigen::VectorXd w;
    /// Member whose entry has the largest magnitude; after normalization |w| <= 1 with
    /// equality there.
    int pinned_member = -1;
};

/// Left-nullspace basis of dg|_p. Each vector is scaled to max-abs 1 with the first
/// non-negligible entry positive.
std::vector<SelfStress> self_stress_basis(const MemberConstraintSystem& sys, const Configuration& p,
                                          double tol_rel = kDefaultRankTolerance);

/// Omega_w as an (n d) x (n d) matrix. Throws InputError on a length mismatch.
Eigen::MatrixXd stress_matrix(const FrameworkGraph& graph, const Eigen::VectorXd& w);

struct StiffnessEnergy {
    Eigen::MatrixXd stiffness;  ///< K_c = dg^T diag(c) dg
    Eigen::MatrixXd energy;     ///< H = Omega_w + K_c
};

/// Throws InputError if any c entry is negative.
StiffnessEnergy stiffness_and_energy(const MemberConstraintSystem& sys, const Configuration& p,
                                     const Eigen::VectorXd& c, const Eigen::VectorXd& w);

enum class PrestressVerdict { certificate_found, infinitesimally_rigid, no_self_stress, not_found };

std::string_view to_string(PrestressVerdict v);

struct PrestressOptions {
    double tol_rel = kDefaultRankTolerance;
    int starts = 20;
    std::uint64_t seed = 0;
    double sign_margin = 1e-9;
    int max_iterations = 500;
};

struct PrestressCertificate {
    PrestressVerdict verdict = PrestressVerdict::not_found;
    int flex_dim = 0;
    int stress_dim = 0;
    /// Coefficients over the stress basis (unit norm when k >= 2, +-1 when k = 1).
    Eigen::VectorXd coefficients;
    Eigen::VectorXd stress;
    Eigen::MatrixXd flexes;
    Eigen::MatrixXd reduced;  ///< F^T Omega F
    Eigen::VectorXd reduced_eigenvalues;
    double min_eigenvalue = 0.0;
    bool cables_positive = true;
    bool struts_negative = true;
    /// Members whose stress entry vanishes (|w| <= margin).
    std::vector<int> zero_members;
};

/// `kinds` overrides the member kinds used for the sign flags (may be empty to use the graph's).
PrestressCertificate prestress_certificate(const MemberConstraintSystem& sys, const Configuration& p,
                                           std::span<const MemberKind> kinds = {},
                                           const PrestressOptions& opts = {});

/// lambda_min(F^T (sum_i a_i Omega_i) F); shared by the search and its independent re-check.
double reduced_min_eigenvalue(const std::vector<Eigen::MatrixXd>& reduced_stresses,
                              const Eigen::VectorXd& a);

}  // namespace tensegrity
