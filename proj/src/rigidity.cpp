#include "tensegrity/rigidity.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace tensegrity {

Eigen::MatrixXd jacobian_at(const FrameworkGraph& graph, const Configuration& x) {
    require_shape(graph, x);
    const int d = graph.dimension();
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(graph.member_count(), graph.coordinate_count());
    const auto& c = x.coords();
    for (int r = 0; r < graph.member_count(); ++r) {
        const Member& m = graph.member(r);
        for (int k = 0; k < d; ++k) {
            const double diff = c(m.i, k) - c(m.j, k);
            jac(r, m.i * d + k) = 2.0 * diff;
            jac(r, m.j * d + k) = -2.0 * diff;
        }
    }
    return jac;
}

Eigen::MatrixXd incidence_matrix(const FrameworkGraph& graph, IncidenceOrientation orientation) {
    const double tail = orientation == IncidenceOrientation::tail_positive ? 1.0 : -1.0;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(graph.member_count(), graph.node_count());
    for (int r = 0; r < graph.member_count(); ++r) {
        a(r, graph.member(r).i) = tail;
        a(r, graph.member(r).j) = -tail;
    }
    return a;
}

RigidityAndIncidence rigidity_and_incidence(const MemberConstraintSystem& sys, const Configuration& x,
                                            double min_length) {
    const FrameworkGraph& graph = sys.graph();
    const int d = graph.dimension();
    RigidityAndIncidence out;
    out.matrices.jacobian = jacobian_at(graph, x);
    out.matrices.lengths = squared_lengths(graph, x).cwiseSqrt();
    out.matrices.rigidity = Eigen::MatrixXd::Zero(graph.member_count(), graph.coordinate_count());
    const auto& c = x.coords();
    for (int r = 0; r < graph.member_count(); ++r) {
        const Member& m = graph.member(r);
        const double len = out.matrices.lengths(r);
        if (!(len > min_length))
            throw InputError("member (" + std::to_string(m.i + 1) + ", " + std::to_string(m.j + 1) +
                             ") has coincident endpoints");
        for (int k = 0; k < d; ++k) {
            const double u = (c(m.i, k) - c(m.j, k)) / len;
            out.matrices.rigidity(r, m.i * d + k) = u;
            out.matrices.rigidity(r, m.j * d + k) = -u;
        }
    }
    out.incidence = incidence_matrix(graph);
    return out;
}

Eigen::MatrixXd rigid_motion_basis(const Configuration& x, double tol_rel) {
    const int n = x.node_count();
    const int d = x.dimension();
    const int motions = d + binomial(d, 2);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n * d, motions);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < n; ++i) b(i * d + k, k) = 1.0;
    int col = d;
    for (int a = 0; a < d; ++a) {
        for (int c = a + 1; c < d; ++c, ++col) {
            // Skew matrix with S(a,c) = -1, S(c,a) = 1 applied to every node.
            for (int i = 0; i < n; ++i) {
                b(i * d + a, col) = -x.coords()(i, c);
                b(i * d + c, col) = x.coords()(i, a);
            }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int rank = 0;
    if (s.size() > 0 && s(0) > 0.0)
        while (rank < s.size() && s(rank) > tol_rel * s(0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

int numerical_rank(const Eigen::MatrixXd& m, double tol_rel) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s(0) <= 0.0) return 0;
    int rank = 0;
    while (rank < s.size() && s(rank) > tol_rel * s(0)) ++rank;
    return rank;
}

Eigen::MatrixXd numerical_nullspace(const Eigen::MatrixXd& m, double tol_rel) {
    const Eigen::Index cols = m.cols();
    if (m.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int rank = 0;
    if (s(0) > 0.0)
        while (rank < s.size() && s(rank) > tol_rel * s(0)) ++rank;
    return svd.matrixV().rightCols(cols - rank);
}

Eigen::MatrixXd left_nullspace(const Eigen::MatrixXd& m, double tol_rel) {
    return numerical_nullspace(m.transpose(), tol_rel);
}

namespace {

// Flip each column so that its largest-magnitude entry is positive.
void canonical_signs(Eigen::MatrixXd& basis) {
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        Eigen::Index at = 0;
        basis.col(c).cwiseAbs().maxCoeff(&at);
        if (basis(at, c) < 0.0) basis.col(c) *= -1.0;
    }
}

}  // namespace

NullspaceDecomposition decompose_nullspace(const FrameworkGraph& graph, const Configuration& x,
                                           double tol_rel) {
    NullspaceDecomposition out;
    out.tolerance = tol_rel;
    const Eigen::MatrixXd null = numerical_nullspace(jacobian_at(graph, x), tol_rel);
    out.rigid_motions = rigid_motion_basis(x);
    const Eigen::MatrixXd& r = out.rigid_motions;
    const Eigen::MatrixXd projected = null - r * (r.transpose() * null);
    if (projected.cols() == 0) {
        out.flexes.resize(null.rows(), 0);
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(projected, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    // Projections of an orthonormal basis: singular values are ~1 on the complement, ~0 on R.
    int k = 0;
    while (k < s.size() && s(k) > 0.5) ++k;
    out.flexes = svd.matrixU().leftCols(k);
    canonical_signs(out.flexes);
    return out;
}

std::string_view to_string(RigidityVerdict v) {
    return v == RigidityVerdict::infinitesimally_rigid ? "infinitesimally_rigid"
                                                       : "not_infinitesimally_rigid";
}

Configuration random_configuration(int nodes, int dimension, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::MatrixXd c(nodes, dimension);
    for (int i = 0; i < nodes; ++i)
        for (int k = 0; k < dimension; ++k) c(i, k) = unit(rng);
    return Configuration(std::move(c));
}

RigidityReport rigidity_report(const MemberConstraintSystem& sys, const Configuration& p, int trials,
                               std::uint64_t seed, double tol_rel) {
    if (trials < 1) throw InputError("trials must be at least 1");
    const FrameworkGraph& graph = sys.graph();
    require_shape(graph, p);
    RigidityReport rep;
    rep.nodes = graph.node_count();
    rep.dimension = graph.dimension();
    rep.members = graph.member_count();
    rep.seed = seed;
    rep.trials = trials;

    const int cols = graph.coordinate_count();
    rep.rank_at_p = numerical_rank(jacobian_at(graph, p), tol_rel);
    rep.corank_at_p = cols - rep.rank_at_p;

    // Coranks at random points agree with probability one; a disagreement means an unlucky
    // draw (or a tolerance problem), so redraw the whole batch a few times before giving up.
    constexpr int kMaxRounds = 5;
    std::mt19937_64 seeder(seed);
    int best = cols;
    rep.trials_agree = false;
    for (int round = 0; round < kMaxRounds && !rep.trials_agree; ++round) {
        int lo = cols;
        int hi = 0;
        for (int t = 0; t < trials; ++t) {
            const Configuration q = random_configuration(graph.node_count(), graph.dimension(), seeder());
            const int corank = cols - numerical_rank(jacobian_at(graph, q), tol_rel);
            lo = std::min(lo, corank);
            hi = std::max(hi, corank);
        }
        best = std::min(best, lo);
        rep.trials_agree = lo == hi;
    }
    rep.generic_corank = best;
    rep.generic_rank = cols - best;

    rep.nullspace = decompose_nullspace(graph, p, tol_rel);
    rep.rigid_motion_dim = static_cast<int>(rep.nullspace.rigid_motions.cols());
    const int full = binomial(graph.dimension() + 1, 2);
    rep.sandwich_applicable = rep.rigid_motion_dim == full;
    rep.verdict = rep.corank_at_p == rep.rigid_motion_dim ? RigidityVerdict::infinitesimally_rigid
                                                          : RigidityVerdict::not_infinitesimally_rigid;
    return rep;
}

Configuration pin_moving_frame(const Configuration& x) {
    const int n = x.node_count();
    const int d = x.dimension();
    const Eigen::RowVectorXd origin = x.coords().row(0);
    Eigen::MatrixXd shifted = x.coords().rowwise() - origin;
    if (n == 1) return Configuration(shifted);

    const Eigen::MatrixXd diffs = shifted.bottomRows(n - 1).transpose();  // d x (n-1)
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(diffs);
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();

    const int leading = std::min(d, n - 1);
    const double scale = std::max(1.0, diffs.cwiseAbs().maxCoeff());
    for (int k = 0; k < leading; ++k)
        if (std::abs(r(k, k)) <= 1e-12 * scale)
            throw InputError("leading nodes of the configuration are affinely dependent; cannot pin");

    const Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd pinned = shifted * q;  // rows become Q^T (x_i - x_1)
    for (int i = 0; i < std::min(n, d); ++i)
        for (int k = i; k < d; ++k) pinned(i, k) = 0.0;
    return Configuration(std::move(pinned));
}

std::vector<int> free_coordinate_indices(int nodes, int dimension) {
    std::vector<int> out;
    for (int i = 0; i < nodes; ++i)
        for (int k = 0; k < dimension; ++k)
            if (!(i < dimension && k >= i)) out.push_back(i * dimension + k);
    return out;
}

bool is_pinned(const Configuration& x, double tol) {
    const int d = x.dimension();
    for (int i = 0; i < std::min(x.node_count(), d); ++i)
        for (int k = i; k < d; ++k)
            if (std::abs(x.coords()(i, k)) > tol) return false;
    return true;
}

Eigen::MatrixXd weighted_laplacian(const FrameworkGraph& graph, const Eigen::VectorXd& weights) {
    if (weights.size() != graph.member_count())
        throw InputError("weight vector length " + std::to_string(weights.size()) +
                         " does not match member count " + std::to_string(graph.member_count()));
    const Eigen::MatrixXd a = incidence_matrix(graph);
    return a.transpose() * weights.asDiagonal() * a;
}

Eigenpairs laplacian_eigenpairs(const FrameworkGraph& graph, const Eigen::VectorXd& conductances) {
    if (conductances.size() != graph.member_count())
        throw InputError("conductance vector does not match member count");
    if ((conductances.array() <= 0.0).any()) throw InputError("conductances must be positive");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(weighted_laplacian(graph, conductances));
    return Eigenpairs{eig.eigenvalues(), eig.eigenvectors()};
}

}  // namespace tensegrity
