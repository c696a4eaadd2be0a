/**
 * @file deformation.hpp
 * @brief Pinned member systems, hyperplane deformations and epsilon-local rigidity checks.
 *
 * After pin_moving_frame the first d nodes have x_ik = 0 for k >= i, leaving
 * N = n d - binom(d+1, 2) free coordinates. All systems here live in those N variables.
 */
#pragma once

#include "tensegrity/continuation.hpp"
#include "tensegrity/framework.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace tensegrity {

struct PinnedSystem {
    int nodes = 0;
    int dimension = 0;
    std::vector<int> free_indices;       ///< flat node-major index of each variable
    continuation::PolySystem members;   ///< g_ij in the free variables, member order

    int variable_count() const { return static_cast<int>(free_indices.size()); }
    Eigen::VectorXd to_free(const Configuration& x) const;
    /// Complex node coordinates (n x d) with the pinned entries set to zero.
    Eigen::MatrixXcd to_coords(const continuation::CVector& free) const;
    Configuration real_configuration(const continuation::CVector& free) const;
    /// Embed a free-variable vector into R^{n d} with zeros at pinned entries.
    Eigen::VectorXd embed(const Eigen::VectorXd& free) const;
};

PinnedSystem pinned_member_system(const MemberConstraintSystem& sys);

/// Jacobian of the pinned member polynomials at p (m x N, real).
Eigen::MatrixXd pinned_jacobian(const PinnedSystem& ps, const Configuration& p);

enum class DirectionKind { flex, random, explicit_vector };

std::string_view to_string(DirectionKind kind);

struct DeformOptions {
    DirectionKind direction = DirectionKind::flex;
    Eigen::VectorXd vector;  ///< free-variable direction when direction == explicit_vector
    double epsilon = 0.01;
    int steps = 1;
    std::uint64_t seed = 0;
    double tau_imag = 1e-6;
    continuation::TrackOptions track;
};

struct DeformStep {
    double offset = 0.0;
    Eigen::MatrixXcd coords;
    continuation::TrackResult track;
    bool real = false;
    double max_imag = 0.0;
    /// max_ij |g_ij| at the real part of the endpoint.
    double member_residual = 0.0;
};

struct DeformResult {
    continuation::TrackStatus status = continuation::TrackStatus::no_real_solution;
    Eigen::VectorXd direction;  ///< unit hyperplane normal in the free variables
    std::vector<DeformStep> steps;
    /// Real part of the final accepted endpoint.
    Eigen::MatrixXd final_coords;
    /// Cosine between the final displacement and the first flex, rigid motions projected
    /// out in R^{n d}; zero when the framework has no flex.
    double flex_cosine = 0.0;
};

/// Requires p pinned. Adjoins v^T x - v^T p - offset to the pinned member system and tracks the
/// path from p while the offset moves 0 -> epsilon over `steps` re-anchored stages with gamma = 1.
/// When members + 1 exceeds N the system is squared up with a fixed seeded real random matrix.
DeformResult deform_framework(const MemberConstraintSystem& sys, const Configuration& p,
                              const DeformOptions& opts);

enum class EpsilonVerdict { epsilon_locally_rigid, deformation_found, inconclusive };

std::string_view to_string(EpsilonVerdict v);

struct EpsilonOptions {
    double epsilon = 0.1;
    std::uint64_t seed = 0;
    double tau_imag = 1e-6;
    double tau_feas = 1e-8;
    std::uint64_t path_budget = 20000;
    /// Verdict is inconclusive when more than this fraction of paths fail to finish.
    double max_failure_fraction = 0.05;
    continuation::TrackOptions track;
};

struct EpsilonResult {
    EpsilonVerdict verdict = EpsilonVerdict::inconclusive;
    int unknowns = 0;
    std::uint64_t paths = 0;
    int converged = 0;
    int diverged = 0;
    int failed = 0;
    int real_critical_points = 0;
    Eigen::VectorXd target_point;           ///< random point q in the free variables
    std::vector<Eigen::MatrixXd> witnesses;  ///< real configurations on the sphere
};

/// Critical points of |x - q|^2 on {g = 0, |x - p|^2 = eps^2}, found by a total-degree solve of
/// the Lagrange system. Throws continuation::BudgetError when the Bezout number exceeds the
/// budget and InputError when p is not pinned or epsilon <= 0.
EpsilonResult epsilon_rigidity_check(const MemberConstraintSystem& sys, const Configuration& p,
                                     const EpsilonOptions& opts);

}  // namespace tensegrity
