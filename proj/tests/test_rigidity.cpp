#include "reference.hpp"
#include "support.hpp"

#include "tensegrity/rigidity.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace tensegrity;
using test_support::exact_rank;
using test_support::load;

namespace {

FrameworkGraph random_graph(int n, int d, std::mt19937_64& rng) {
    std::vector<Member> members;
    std::bernoulli_distribution coin(0.6);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (j == i + 1 || coin(rng)) members.push_back({i, j, MemberKind::bar});
    return FrameworkGraph(n, d, members);
}

// Jacobian entries from the definition, exact over Q.
std::vector<std::vector<mpq_class>> exact_jacobian(const FrameworkGraph& g, const std::vector<std::vector<mpq_class>>& x) {
    const int d = g.dimension();
    std::vector<std::vector<mpq_class>> out(static_cast<std::size_t>(g.member_count()),
                                            std::vector<mpq_class>(static_cast<std::size_t>(g.coordinate_count()), 0));
    for (int k = 0; k < g.member_count(); ++k) {
        const Member& m = g.member(k);
        for (int c = 0; c < d; ++c) {
            const mpq_class diff = 2 * (x[m.i][c] - x[m.j][c]);
            out[k][m.i * d + c] = diff;
            out[k][m.j * d + c] = -diff;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("L A equals half the Jacobian") {
    const LoadedFramework prism = load("3prism.json");
    {
        const RigidityAndIncidence r = rigidity_and_incidence(prism.system, prism.embedding);
        const Eigen::MatrixXd diff = r.matrices.length_matrix() * r.matrices.rigidity - 0.5 * r.matrices.jacobian;
        CHECK(diff.cwiseAbs().maxCoeff() <= 1e-12);
    }
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial % 5, d = 1 + trial % 3;
        const FrameworkGraph g = random_graph(n, d, rng);
        const Configuration x = random_configuration(n, d, 100 + static_cast<std::uint64_t>(trial));
        const MemberConstraintSystem sys = MemberConstraintSystem::from_embedding(g, x);
        const RigidityAndIncidence r = rigidity_and_incidence(sys, x);
        const Eigen::MatrixXd diff = r.matrices.length_matrix() * r.matrices.rigidity - 0.5 * r.matrices.jacobian;
        CHECK(diff.cwiseAbs().maxCoeff() <= 1e-12);
        for (Eigen::Index k = 0; k < r.matrices.rigidity.rows(); ++k) {
            // one unit vector and its negation per row
            CHECK(r.matrices.rigidity.row(k).squaredNorm() == doctest::Approx(2.0).epsilon(1e-12));
            CHECK(std::abs(r.matrices.rigidity.row(k).sum()) < 1e-12);
        }
    }
}

TEST_CASE("zero-length members are rejected") {
    const FrameworkGraph g(2, 2, {{0, 1, MemberKind::bar}});
    const Configuration x(Eigen::MatrixXd::Zero(2, 2));
    CHECK_THROWS_AS(rigidity_and_incidence(MemberConstraintSystem::from_embedding(g, x), x), InputError);
}

TEST_CASE("incidence matrix orientation") {
    const FrameworkGraph g(4, 1, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    Eigen::VectorXd y(5);
    y << -2, 1, 3, 4, 1;
    const Eigen::VectorXd head = incidence_matrix(g, IncidenceOrientation::head_positive).transpose() * y;
    Eigen::VectorXd expected(4);
    expected << 1, -9, 3, 5;
    CHECK((head - expected).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::VectorXd tail = incidence_matrix(g, IncidenceOrientation::tail_positive).transpose() * y;
    CHECK((tail + expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("3-prism ranks") {
    const LoadedFramework prism = load("3prism.json");
    const RigidityReport rep = rigidity_report(prism.system, prism.embedding, 3, 5);
    CHECK(rep.rank_at_p == 11);
    CHECK(rep.corank_at_p == 7);
    CHECK(rep.generic_corank == 6);
    CHECK(rep.rigid_motion_dim == 6);
    CHECK(rep.trials_agree);
    CHECK(rep.verdict == RigidityVerdict::not_infinitesimally_rigid);
    CHECK(rep.nullspace.flexes.cols() == 1);
    // corank sandwich
    CHECK(rep.rigid_motion_dim <= rep.generic_corank);
    CHECK(rep.generic_corank <= rep.corank_at_p);
}

TEST_CASE("numerical coranks agree with exact rational elimination") {
    SUBCASE("unit square") {
        const LoadedFramework sq = load("square.json");
        std::vector<std::vector<mpq_class>> x{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        const int exact = exact_rank(exact_jacobian(sq.graph, x));
        CHECK(exact == 4);
        CHECK(numerical_rank(jacobian_at(sq.graph, sq.embedding)) == exact);
        CHECK(numerical_nullspace(jacobian_at(sq.graph, sq.embedding)).cols() == 8 - exact);
    }
    SUBCASE("3-prism at rational points") {
        const LoadedFramework prism = load("3prism.json");
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<int> num(-20, 20);
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<std::vector<mpq_class>> xq(6, std::vector<mpq_class>(3));
            Eigen::MatrixXd xd(6, 3);
            for (int i = 0; i < 6; ++i)
                for (int k = 0; k < 3; ++k) {
                    xq[i][k] = mpq_class(num(rng), 7);
                    xd(i, k) = xq[i][k].get_d();
                }
            const int exact = exact_rank(exact_jacobian(prism.graph, xq));
            CHECK(exact == 12);
            CHECK(numerical_rank(jacobian_at(prism.graph, Configuration(xd))) == exact);
        }
    }
}

TEST_CASE("nullspace residuals and rigid motions") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + trial % 4, d = 2 + trial % 2;
        const FrameworkGraph g = random_graph(n, d, rng);
        const Configuration x = random_configuration(n, d, 500 + static_cast<std::uint64_t>(trial));
        const Eigen::MatrixXd j = jacobian_at(g, x);
        const Eigen::MatrixXd ns = numerical_nullspace(j);
        CHECK(ns.cols() == g.coordinate_count() - numerical_rank(j));
        if (ns.cols() > 0) {
            CHECK((j * ns).norm() <= 1e-10 * j.norm());
            CHECK((ns.transpose() * ns - Eigen::MatrixXd::Identity(ns.cols(), ns.cols())).norm() < 1e-10);
        }
        const Eigen::MatrixXd rm = rigid_motion_basis(x);
        CHECK(rm.cols() == binomial(d + 1, 2));
        CHECK((j * rm).norm() <= 1e-10 * j.norm());
        const Eigen::MatrixXd ln = left_nullspace(j);
        if (ln.cols() > 0) CHECK((ln.transpose() * j).norm() <= 1e-10 * j.norm());
        const NullspaceDecomposition dec = decompose_nullspace(g, x);
        CHECK(dec.rigid_motions.cols() + dec.flexes.cols() == ns.cols());
        if (dec.flexes.cols() > 0) CHECK((dec.rigid_motions.transpose() * dec.flexes).norm() < 1e-10);
    }
}

TEST_CASE("3-prism flex matches the printed vector") {
    const LoadedFramework prism = load("3prism.json");
    const NullspaceDecomposition dec = decompose_nullspace(prism.graph, prism.embedding);
    REQUIRE(dec.flexes.cols() == 1);
    Eigen::VectorXd v = dec.flexes.col(0);
    v *= 1.58 / v.cwiseAbs().maxCoeff();
    CHECK(test_support::signed_distance(v, reference::prism_flex()) <= 1e-2);
    CHECK((jacobian_at(prism.graph, prism.embedding) * v).norm() < 1e-10);
}

TEST_CASE("moving frame pinning") {
    const LoadedFramework prism = load("3prism.json");
    const Configuration pinned = pin_moving_frame(prism.embedding);
    CHECK((pinned.coords() - reference::pinned_prism()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(pinned.coords()(1, 0) == doctest::Approx(1.7320508075688772).epsilon(1e-15));
    CHECK(is_pinned(pinned));
    CHECK_FALSE(is_pinned(prism.embedding));
    const Configuration again = pin_moving_frame(pinned);
    CHECK((again.coords() - pinned.coords()).cwiseAbs().maxCoeff() <= 1e-12);
    // pinning is a rigid motion
    const Eigen::VectorXd a = squared_lengths(prism.graph, prism.embedding);
    const Eigen::VectorXd b = squared_lengths(prism.graph, pinned);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);

    const std::vector<int> free = free_coordinate_indices(6, 3);
    CHECK(free.size() == 12);
    const std::set<int> fixed_expected{0, 1, 2, 4, 5, 8};
    for (int idx : free) CHECK(fixed_expected.count(idx) == 0);
}

TEST_CASE("molecule eigenpairs") {
    const LoadedFramework mol = load("molecule.json");
    const Eigenpairs ep = laplacian_eigenpairs(mol.graph, Eigen::VectorXd::Ones(2));
    const Eigen::Vector3d values(0, 1, 3);
    CHECK((ep.values - values).cwiseAbs().maxCoeff() <= 1e-10);
    Eigen::MatrixXd expected(3, 3);
    expected << 1, 1, -1,
                1, 0, 2,
                1, -1, -1;
    const Eigen::MatrixXd k = weighted_laplacian(mol.graph, Eigen::VectorXd::Ones(2));
    for (int c = 0; c < 3; ++c) {
        const Eigen::VectorXd u = expected.col(c).normalized();
        CHECK(test_support::signed_distance(ep.vectors.col(c), u) <= 1e-10);
        CHECK((k * expected.col(c) - values(c) * expected.col(c)).cwiseAbs().maxCoeff() <= 1e-10);
    }
    CHECK_THROWS_AS(laplacian_eigenpairs(mol.graph, Eigen::Vector2d(1.0, 0.0)), InputError);
}

TEST_CASE("weighted Laplacians with non-negative weights are PSD") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const FrameworkGraph g = random_graph(3 + trial % 6, 1, rng);
        Eigen::VectorXd c(g.member_count());
        for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = u(rng);
        const Eigen::MatrixXd lap = weighted_laplacian(g, c);
        CHECK((lap - lap.transpose()).norm() < 1e-14);
        CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(lap).eigenvalues().minCoeff() >= -1e-12);
        CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
    }
}
