#pragma once

#include "tensegrity/framework.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>

namespace tensegrity {

inline constexpr double kDefaultRankTolerance = 1e-8;

/// Jacobian of the member polynomials, m x (n d). Row (i, j) holds 2(x_i - x_j) in
/// the columns of node i and 2(x_j - x_i) in the columns of node j.
Eigen::MatrixXd jacobian_at(const FrameworkGraph& graph, const Configuration& x);
inline Eigen::MatrixXd jacobian_at(const MemberConstraintSystem& sys, const Configuration& x) {
    return jacobian_at(sys.graph(), x);
}

struct RigidityMatrices {
    Eigen::MatrixXd jacobian;
    /// Rows carry antipodal unit vectors along each member.
    Eigen::MatrixXd rigidity;
    /// Current member lengths; L = diag(lengths) satisfies L A = dg / 2.
    Eigen::VectorXd lengths;

    Eigen::MatrixXd length_matrix() const { return lengths.asDiagonal(); }
};

enum class IncidenceOrientation {
    tail_positive,  ///< +1 on the lower-indexed node, -1 on the other
    head_positive,  ///< -1 on the lower-indexed node, +1 on the other
};

/// Signed node-by-member incidence, m x n.
Eigen::MatrixXd incidence_matrix(const FrameworkGraph& graph,
                                 IncidenceOrientation orientation = IncidenceOrientation::tail_positive);

struct RigidityAndIncidence {
    RigidityMatrices matrices;
    Eigen::MatrixXd incidence;
};

/// Throws InputError when a member has (near) zero length at x.
RigidityAndIncidence rigidity_and_incidence(const MemberConstraintSystem& sys, const Configuration& x,
                                            double min_length = 1e-12);

/// Orthonormal basis (columns) of the infinitesimal rigid motions at x: d translations and
/// binom(d,2) rotations, reduced to the actual span when x is degenerate.
Eigen::MatrixXd rigid_motion_basis(const Configuration& x, double tol_rel = 1e-10);

/// Singular values below tol_rel * sigma_max count as zero.
int numerical_rank(const Eigen::MatrixXd& m, double tol_rel = kDefaultRankTolerance);

/// Orthonormal basis (columns) of the right nullspace.
Eigen::MatrixXd numerical_nullspace(const Eigen::MatrixXd& m, double tol_rel = kDefaultRankTolerance);

/// Orthonormal basis (columns) of the left nullspace {w : w^T M = 0}.
Eigen::MatrixXd left_nullspace(const Eigen::MatrixXd& m, double tol_rel = kDefaultRankTolerance);

struct NullspaceDecomposition {
    Eigen::MatrixXd rigid_motions;
    /// Orthogonal complement of rigid_motions inside the nullspace.
    Eigen::MatrixXd flexes;
    double tolerance = kDefaultRankTolerance;
};

NullspaceDecomposition decompose_nullspace(const FrameworkGraph& graph, const Configuration& x,
                                           double tol_rel = kDefaultRankTolerance);

enum class RigidityVerdict { infinitesimally_rigid, not_infinitesimally_rigid };

std::string_view to_string(RigidityVerdict v);

struct RigidityReport {
    int nodes = 0;
    int dimension = 0;
    int members = 0;
    int rank_at_p = 0;
    int corank_at_p = 0;
    int generic_rank = 0;
    int generic_corank = 0;
    int trials = 0;
    /// Whether all random trials agreed on the corank (after any re-draws).
    bool trials_agree = true;
    int rigid_motion_dim = 0;
    /// The corank sandwich binom(d+1,2) <= generic <= at_p only applies to full-span embeddings.
    bool sandwich_applicable = true;
    RigidityVerdict verdict = RigidityVerdict::infinitesimally_rigid;
    NullspaceDecomposition nullspace;
    std::uint64_t seed = 0;
};

RigidityReport rigidity_report(const MemberConstraintSystem& sys, const Configuration& p, int trials,
                               std::uint64_t seed, double tol_rel = kDefaultRankTolerance);

/// Random configuration with coordinates i.i.d. uniform on [-1, 1].
Configuration random_configuration(int nodes, int dimension, std::uint64_t seed);

/// Coordinate change putting node 1 at the origin, node 2 on the first axis, node 3 in the
/// first coordinate plane, and so on. Uses the Householder QR of the difference matrix; the
/// reflection signs follow the Householder convention, which leaves pinned inputs unchanged.
Configuration pin_moving_frame(const Configuration& x);

/// Flat indices (node-major) of coordinates that stay free after pinning: coordinate k of
/// node i (0-based) is pinned to zero when i < d and k >= i.
std::vector<int> free_coordinate_indices(int nodes, int dimension);

/// True when the structural zeros of a pinned configuration hold to tol.
bool is_pinned(const Configuration& x, double tol = 1e-12);

/// Weighted graph Laplacian A^T diag(c) A built on the {+1,-1} incidence matrix.
Eigen::MatrixXd weighted_laplacian(const FrameworkGraph& graph, const Eigen::VectorXd& weights);

struct Eigenpairs {
    Eigen::VectorXd values;   ///< ascending
    Eigen::MatrixXd vectors;  ///< column k pairs with values(k)
};

/// Throws InputError for non-positive conductances.
Eigenpairs laplacian_eigenpairs(const FrameworkGraph& graph, const Eigen::VectorXd& conductances);

}  // namespace tensegrity
