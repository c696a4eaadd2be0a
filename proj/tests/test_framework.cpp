#include "support.hpp"

#include "tensegrity/framework.hpp"

#include <doctest.h>

#include <random>

using namespace tensegrity;
using test_support::load;

TEST_CASE("3-prism document loads with its tensegrity partition") {
    const LoadedFramework fw = load("3prism.json");
    CHECK(fw.graph.node_count() == 6);
    CHECK(fw.graph.dimension() == 3);
    CHECK(fw.graph.member_count() == 12);
    CHECK(fw.graph.find_member(3, 0) == 2);
    CHECK(fw.graph.find_member(0, 5) == -1);
    REQUIRE(fw.partitions.count("tensegrity") == 1);
    const auto& kinds = fw.partitions.at("tensegrity");
    int struts = 0;
    for (MemberKind k : kinds) struts += k == MemberKind::strut;
    CHECK(struts == 3);
    CHECK(evaluate_members(fw.system, fw.embedding).residuals.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(load_framework(std::string_view("{")), InputError);
    CHECK_THROWS_AS(load_framework(std::string_view(R"({"dimension": 2, "nodes": [[0,0]]})")), InputError);
    CHECK_THROWS_AS(load_framework(std::string_view(
                        R"({"dimension": 2, "nodes": [[0,0],[1,0]], "members": [{"i": 1, "j": 1}]})")),
                    InputError);
    CHECK_THROWS_AS(load_framework(std::string_view(
                        R"({"dimension": 2, "nodes": [[0,0],[1,0]], "members": [{"i": 1, "j": 3}]})")),
                    InputError);
    CHECK_THROWS_AS(load_framework(std::string_view(
                        R"({"dimension": 2, "nodes": [[0,0],[1]], "members": []})")),
                    InputError);
    CHECK_THROWS_AS(load_framework(std::string_view(
                        R"({"dimension": 2, "nodes": [[0,0],[1,0]],
                            "members": [{"i": 1, "j": 2}, {"i": 2, "j": 1}]})")),
                    InputError);
    CHECK_THROWS_AS(load_framework(std::string_view(
                        R"({"dimension": 2, "nodes": [[0,0],[1,0]],
                            "members": [{"i": 1, "j": 2, "kind": "rope"}]})")),
                    InputError);
    CHECK_THROWS_AS(load_framework_file(test_support::data_path("missing.json")), InputError);
}

TEST_CASE("member feasibility follows the member kind") {
    const FrameworkGraph g(2, 1, {{0, 1, MemberKind::bar}});
    Eigen::VectorXd l2(1);
    l2 << 1.0;
    const Configuration shorter(Eigen::MatrixXd((Eigen::MatrixXd(2, 1) << 0.0, 0.5).finished()));
    const Configuration longer(Eigen::MatrixXd((Eigen::MatrixXd(2, 1) << 0.0, 2.0).finished()));

    const MemberConstraintSystem bar(g, l2);
    CHECK_FALSE(evaluate_members(bar, shorter).all_feasible());

    const std::vector<MemberKind> cable{MemberKind::cable};
    const MemberConstraintSystem c(g.with_kinds(cable), l2);
    CHECK(evaluate_members(c, shorter).all_feasible());
    CHECK_FALSE(evaluate_members(c, longer).all_feasible());

    const std::vector<MemberKind> strut{MemberKind::strut};
    const MemberConstraintSystem s(g.with_kinds(strut), l2);
    CHECK_FALSE(evaluate_members(s, shorter).all_feasible());
    CHECK(evaluate_members(s, longer).all_feasible());
}

TEST_CASE("member residuals are invariant under rigid motions") {
    const LoadedFramework fw = load("3prism.json");
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::Matrix3d m;
        for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = n01(rng);
        const Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(m).householderQ();
        const Eigen::RowVector3d t(n01(rng), n01(rng), n01(rng));
        Eigen::MatrixXd moved = fw.embedding.coords() * q.transpose();
        moved.rowwise() += t;
        const Eigen::VectorXd a = squared_lengths(fw.graph, fw.embedding);
        const Eigen::VectorXd b = squared_lengths(fw.graph, Configuration(moved));
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("framework JSON round trip") {
    const LoadedFramework fw = load("slingshot.json");
    const std::string text = framework_to_json(fw.graph, fw.embedding, &fw.system.rest_sq_lengths());
    const LoadedFramework back = load_framework(std::string_view(text));
    CHECK(back.graph.member_count() == fw.graph.member_count());
    CHECK((back.embedding.coords() - fw.embedding.coords()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.system.rest_sq_lengths() - fw.system.rest_sq_lengths()).cwiseAbs().maxCoeff() == 0.0);
    for (int k = 0; k < fw.graph.member_count(); ++k) {
        CHECK(back.graph.member(k).i == fw.graph.member(k).i);
        CHECK(back.graph.member(k).j == fw.graph.member(k).j);
    }
}

TEST_CASE("flat coordinates are node-major") {
    Eigen::MatrixXd c(2, 3);
    c << 1, 2, 3, 4, 5, 6;
    const Configuration x(c);
    const Eigen::VectorXd f = x.flat();
    CHECK(f(3) == 4.0);
    CHECK(Configuration::from_flat(f, 3).coords() == c);
    CHECK(binomial(4, 2) == 6);
}
