#include "reference.hpp"
#include "support.hpp"

#include "tensegrity/prestress.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tensegrity;
using test_support::load;

namespace {

// sum over members of w_ij |v_i - v_j|^2, without forming the stress matrix
double energy_by_members(const FrameworkGraph& g, const Eigen::VectorXd& w, const Eigen::VectorXd& v) {
    const int d = g.dimension();
    double total = 0.0;
    for (int k = 0; k < g.member_count(); ++k) {
        const Member& m = g.member(k);
        total += w(k) * (v.segment(m.i * d, d) - v.segment(m.j * d, d)).squaredNorm();
    }
    return total;
}

// max over nodes of |sum_j w_ij (p_i - p_j)|
double equilibrium_defect(const FrameworkGraph& g, const Configuration& p, const Eigen::VectorXd& w) {
    Eigen::MatrixXd force = Eigen::MatrixXd::Zero(p.node_count(), p.dimension());
    for (int k = 0; k < g.member_count(); ++k) {
        const Member& m = g.member(k);
        const Eigen::RowVectorXd diff = p.coords().row(m.i) - p.coords().row(m.j);
        force.row(m.i) += w(k) * diff;
        force.row(m.j) -= w(k) * diff;
    }
    return force.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("3-prism self stress") {
    const LoadedFramework prism = load("3prism.json");
    const std::vector<SelfStress> basis = self_stress_basis(prism.system, prism.embedding);
    REQUIRE(basis.size() == 1);
    const Eigen::VectorXd& w = basis[0].w;
    CHECK(w.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(equilibrium_defect(prism.graph, prism.embedding, w) < 1e-12);
    const Eigen::VectorXd scaled = w / w(0);
    CHECK((scaled - reference::prism_stress()).cwiseAbs().maxCoeff() <= 1e-2);
    // exact ratios: cables 1, struts -sqrt(3), the rest +-sqrt(3)
    CHECK(std::abs(scaled(2) + std::sqrt(3.0)) < 1e-10);
    CHECK(std::abs(scaled(3) - std::sqrt(3.0)) < 1e-10);
}

TEST_CASE("stress matrix energy agrees with the member sum") {
    const LoadedFramework prism = load("3prism.json");
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd w(12), v(18);
        for (Eigen::Index k = 0; k < 12; ++k) w(k) = n01(rng);
        for (Eigen::Index k = 0; k < 18; ++k) v(k) = n01(rng);
        const Eigen::MatrixXd omega = stress_matrix(prism.graph, w);
        CHECK(v.dot(omega * v) == doctest::Approx(energy_by_members(prism.graph, w, v)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(stress_matrix(prism.graph, Eigen::VectorXd::Ones(3)), InputError);
}

TEST_CASE("printed flex and stress energies") {
    const LoadedFramework prism = load("3prism.json");
    const Eigen::VectorXd v = reference::prism_flex();
    const Eigen::VectorXd w = reference::prism_stress();
    const double printed = v.dot(stress_matrix(prism.graph, w) * v);
    CHECK(printed == doctest::Approx(energy_by_members(prism.graph, w, v)).epsilon(1e-12));
    // the 3-digit inputs land about 0.32 above the unrounded value
    CHECK(printed == doctest::Approx(89.8896).epsilon(1e-5));

    const NullspaceDecomposition dec = decompose_nullspace(prism.graph, prism.embedding);
    Eigen::VectorXd exact_v = dec.flexes.col(0);
    exact_v *= (1.0 + 1.0 / std::sqrt(3.0)) / exact_v.cwiseAbs().maxCoeff();
    Eigen::VectorXd exact_w = w;
    for (Eigen::Index k = 0; k < exact_w.size(); ++k)
        if (std::abs(std::abs(w(k)) - 1.73) < 1e-9) exact_w(k) = std::copysign(std::sqrt(3.0), w(k));
    const double exact = exact_v.dot(stress_matrix(prism.graph, exact_w) * exact_v);
    CHECK(std::abs(exact - reference::prism_energy) < 5e-5);
}

TEST_CASE("3-prism prestress certificate") {
    const LoadedFramework prism = load("3prism.json");
    const auto& kinds = prism.partitions.at("tensegrity");
    const PrestressCertificate cert = prestress_certificate(prism.system, prism.embedding, kinds);
    REQUIRE(cert.verdict == PrestressVerdict::certificate_found);
    CHECK(cert.flex_dim == 1);
    CHECK(cert.stress_dim == 1);
    CHECK(cert.min_eigenvalue > 1.0);
    CHECK(cert.cables_positive);
    CHECK(cert.struts_negative);
    CHECK(cert.zero_members.empty());
    // independent re-check: F^T Omega F from scratch
    const Eigen::MatrixXd reduced = cert.flexes.transpose() * stress_matrix(prism.graph, cert.stress) * cert.flexes;
    CHECK((reduced - cert.reduced).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(reduced).eigenvalues().minCoeff() > 1.0);
    CHECK(equilibrium_defect(prism.graph, prism.embedding, cert.stress) < 1e-10);
}

TEST_CASE("prestress verdict branches") {
    SUBCASE("random embedding is infinitesimally rigid") {
        const LoadedFramework prism = load("3prism.json");
        const Configuration q = random_configuration(6, 3, 77);
        const MemberConstraintSystem sys = MemberConstraintSystem::from_embedding(prism.graph, q);
        CHECK(prestress_certificate(sys, q).verdict == PrestressVerdict::infinitesimally_rigid);
    }
    SUBCASE("unit square has no self stress") {
        const LoadedFramework sq = load("square.json");
        const PrestressCertificate cert = prestress_certificate(sq.system, sq.embedding);
        CHECK(cert.verdict == PrestressVerdict::no_self_stress);
        CHECK(cert.flex_dim == 1);
        CHECK(cert.stress_dim == 0);
    }
    SUBCASE("collinear K4 searches over several stresses") {
        std::vector<Member> k4;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) k4.push_back({i, j, MemberKind::bar});
        const FrameworkGraph g(4, 2, k4);
        Eigen::MatrixXd c(4, 2);
        c << 0, 0, 1, 0, 3, 0, 4, 0;
        const Configuration p(c);
        const MemberConstraintSystem sys = MemberConstraintSystem::from_embedding(g, p);
        const PrestressCertificate cert = prestress_certificate(sys, p);
        CHECK(cert.stress_dim >= 2);
        CHECK(cert.flex_dim == 2);
        REQUIRE(cert.verdict == PrestressVerdict::certificate_found);
        CHECK(cert.min_eigenvalue > 0.0);
        CHECK(cert.coefficients.norm() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(equilibrium_defect(g, p, cert.stress) < 1e-10);
    }
}

TEST_CASE("stiffness matrices are PSD for non-negative c") {
    const LoadedFramework prism = load("3prism.json");
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    const Eigen::VectorXd w = self_stress_basis(prism.system, prism.embedding)[0].w;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd c(12);
        for (Eigen::Index k = 0; k < 12; ++k) c(k) = u(rng);
        const StiffnessEnergy se = stiffness_and_energy(prism.system, prism.embedding, c, w);
        CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(se.stiffness).eigenvalues().minCoeff() >= -1e-10);
        CHECK((se.energy - se.stiffness - stress_matrix(prism.graph, w)).cwiseAbs().maxCoeff() < 1e-12);
    }
    Eigen::VectorXd bad = Eigen::VectorXd::Ones(12);
    bad(4) = -0.1;
    CHECK_THROWS_AS(stiffness_and_energy(prism.system, prism.embedding, bad, w), InputError);
}
