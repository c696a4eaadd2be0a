#include "support.hpp"

#include "tensegrity/cli.hpp"
#include "tensegrity/continuation.hpp"
#include "tensegrity/deformation.hpp"
#include "tensegrity/rigidity.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace tensegrity;
using namespace tensegrity::continuation;
using test_support::data_path;
using test_support::load;

namespace {

PolySystem parse_system(const std::vector<std::string>& vars, const std::vector<std::string>& eqs) {
    const symbolic::PolyRing ring(vars);
    std::vector<MultiPoly> out;
    for (const auto& e : eqs) out.push_back(cli::to_multipoly(ring.parse(e)));
    return PolySystem(out);
}

// Greedy match of two root lists; returns the worst distance (infinity on a size mismatch).
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const Complex& z : a) {
        auto best = std::min_element(b.begin(), b.end(),
                                     [&](Complex u, Complex v) { return std::abs(u - z) < std::abs(v - z); });
        worst = std::max(worst, std::abs(*best - z));
        b.erase(best);
    }
    return worst;
}

std::vector<Complex> univariate_roots(const SolveResult& res) {
    std::vector<Complex> out;
    for (const CVector& x : res.converged_endpoints()) out.push_back(x(0));
    return out;
}

// Eigenvalues of the companion matrix of a monic polynomial (coefficients low to high, leading 1 implied).
std::vector<Complex> companion_roots(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(m).eigenvalues();
    return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

}  // namespace

TEST_CASE("cubic roots") {
    const cli::PolynomialSystemFile a = cli::load_polynomial_system(data_path("cubic_a.json"));
    const SolveResult ra = solve_total_degree(a.system);
    CHECK(ra.bezout == 3);
    CHECK(ra.count(TrackStatus::converged) == 3);
    CHECK(multiset_distance(univariate_roots(ra), {3.0, {2.0, 1.0}, {2.0, -1.0}}) <= 1e-8);

    const cli::PolynomialSystemFile b = cli::load_polynomial_system(data_path("cubic_b.json"));
    const SolveResult rb = solve_total_degree(b.system);
    CHECK(rb.count(TrackStatus::converged) == 3);
    CHECK(multiset_distance(univariate_roots(rb), {-3.0, {4.0, 1.0}, {4.0, -1.0}}) <= 1e-8);
}

TEST_CASE("product system has four real roots") {
    const cli::PolynomialSystemFile f = cli::load_polynomial_system(data_path("product.json"));
    const SolveResult res = solve_total_degree(f.system);
    CHECK(res.bezout == 4);
    const std::vector<Eigen::VectorXd> real = res.real_endpoints();
    REQUIRE(real.size() == 4);
    for (const auto& x : real) {
        CHECK(std::abs(std::abs(x(0)) - 1.0) < 1e-8);
        CHECK(std::abs(std::abs(x(1)) - 2.0) < 1e-8);
    }
}

TEST_CASE("roots agree with companion-matrix eigenvalues") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int deg = 1; deg <= 8; ++deg) {
        std::vector<double> c(static_cast<std::size_t>(deg));
        for (double& x : c) x = u(rng);
        MultiPoly p = MultiPoly::constant(1, c[0]);
        for (int k = 1; k <= deg; ++k) p.add_term({k}, k == deg ? 1.0 : c[static_cast<std::size_t>(k)]);
        SolveOptions opts;
        opts.seed = static_cast<std::uint64_t>(deg);
        const SolveResult res = solve_total_degree(PolySystem({p}), opts);
        CHECK(res.count(TrackStatus::converged) == deg);
        CHECK(multiset_distance(univariate_roots(res), companion_roots(c)) <= 1e-7);
    }
}

TEST_CASE("endpoints do not depend on gamma") {
    const cli::PolynomialSystemFile f = cli::load_polynomial_system(data_path("cubic_a.json"));
    const std::vector<Complex> base = univariate_roots(solve_total_degree(f.system));
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        SolveOptions opts;
        opts.seed = seed;
        const SolveResult res = solve_total_degree(f.system, opts);
        CHECK(res.gamma != Complex(1.0));
        CHECK(std::abs(std::abs(res.gamma) - 1.0) < 1e-14);
        CHECK(multiset_distance(univariate_roots(res), base) <= 1e-8);
    }
}

TEST_CASE("solving is deterministic for a fixed seed") {
    const PolySystem f = parse_system({"x", "y"}, {"x^2 + y^2 - 5", "x*y - 2"});
    SolveOptions opts;
    opts.seed = 42;
    const SolveResult a = solve_total_degree(f, opts);
    const SolveResult b = solve_total_degree(f, opts);
    REQUIRE(a.paths.size() == b.paths.size());
    for (std::size_t i = 0; i < a.paths.size(); ++i) {
        CHECK(a.paths[i].status == b.paths[i].status);
        CHECK(a.paths[i].endpoint == b.paths[i].endpoint);
    }
    CHECK(a.real_endpoints().size() == 4);
}

TEST_CASE("converged endpoints satisfy the residual bound") {
    const PolySystem f = parse_system({"x", "y"}, {"x^3 - y - 1", "x*y^2 + 2*y - 3"});
    const SolveResult res = solve_total_degree(f);
    CHECK(res.bezout == 9);
    CHECK(res.count(TrackStatus::converged) + res.count(TrackStatus::diverged) == 9);
    const TrackOptions t;
    for (const TrackResult& r : res.paths) {
        if (!r.converged()) continue;
        const double bound = t.end_tol * (1.0 + std::pow(r.endpoint.norm(), f.max_degree()));
        CHECK(f.evaluate(r.endpoint).norm() <= bound);
    }
}

TEST_CASE("identity homotopy keeps the start point") {
    const PolySystem g = total_degree_start_system({2, 3});
    const std::vector<CVector> roots = total_degree_start_roots({2, 3});
    CHECK(roots.size() == 6);
    const Homotopy h(g, g, Complex(0.6, 0.8));
    for (const CVector& x0 : roots) {
        const TrackResult r = track_path(h, x0);
        CHECK(r.converged());
        CHECK((r.endpoint - x0).norm() < 1e-10);
    }
}

TEST_CASE("continuation input errors") {
    const PolySystem square = parse_system({"x"}, {"x^2 - 2"});
    const PolySystem start = total_degree_start_system({2});
    CVector bad(1);
    bad << 0.3;
    CHECK_THROWS_AS(track_path(Homotopy(square, start), bad), InputError);
    const PolySystem wide = parse_system({"x", "y"}, {"x - y"});
    CHECK_THROWS_AS(solve_total_degree(wide), InputError);
    CHECK_THROWS_AS(Homotopy(square, start, Complex(2.0)), InputError);
    SolveOptions tight;
    tight.path_budget = 2;
    CHECK_THROWS_AS(solve_total_degree(parse_system({"x"}, {"x^3 - 1"}), tight), BudgetError);
    const PolySystem big = parse_system({"x", "y", "z"}, {"x^10 - 1", "y^10 - 1", "z^10 - 1"});
    CHECK(bezout_number(big) == 1000);
}

namespace {

struct PinnedPrism {
    LoadedFramework fw = load("3prism.json");
    Configuration p = pin_moving_frame(fw.embedding);
    MemberConstraintSystem sys = MemberConstraintSystem::from_embedding(fw.graph, p);
};

}  // namespace

TEST_CASE("deformation with zero offset returns p") {
    const PinnedPrism prism;
    DeformOptions opts;
    opts.epsilon = 0.0;
    const DeformResult res = deform_framework(prism.sys, prism.p, opts);
    REQUIRE(res.status == TrackStatus::converged);
    CHECK((res.final_coords - prism.p.coords()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK_THROWS_AS(deform_framework(prism.sys, prism.fw.embedding, opts), InputError);
}

TEST_CASE("3-prism twists along its flex") {
    const PinnedPrism prism;
    for (double eps : {0.02, -0.02}) {
        DeformOptions opts;
        opts.epsilon = eps;
        opts.seed = 1;
        const DeformResult res = deform_framework(prism.sys, prism.p, opts);
        REQUIRE(res.status == TrackStatus::converged);
        const DeformStep& last = res.steps.back();
        CHECK(last.real);
        CHECK(last.member_residual > 1e-8);
        CHECK(last.member_residual < 1e-1);
        CHECK(res.flex_cosine > 0.9);
        // the top triangle rises for one twist sense and sinks for the other
        for (int node = 3; node < 6; ++node) {
            if (eps > 0) CHECK(res.final_coords(node, 2) > 3.0);
            else CHECK(res.final_coords(node, 2) < 3.0);
        }
        const Eigen::VectorXd g = squared_lengths(prism.fw.graph, Configuration(res.final_coords)) -
                                  prism.sys.rest_sq_lengths();
        CHECK(std::abs(g.cwiseAbs().maxCoeff() - last.member_residual) < 1e-12);
    }
}

TEST_CASE("epsilon-local rigidity") {
    SUBCASE("pinned triangle is rigid") {
        const LoadedFramework tri = load("triangle.json");
        const EpsilonResult res = epsilon_rigidity_check(tri.system, tri.embedding, {});
        CHECK(res.verdict == EpsilonVerdict::epsilon_locally_rigid);
        CHECK(res.witnesses.empty());
    }
    SUBCASE("hinge deforms") {
        const LoadedFramework hinge = load("hinge.json");
        EpsilonOptions opts;
        opts.epsilon = 0.1;
        const EpsilonResult res = epsilon_rigidity_check(hinge.system, hinge.embedding, opts);
        REQUIRE(res.verdict == EpsilonVerdict::deformation_found);
        REQUIRE(!res.witnesses.empty());
        // the free node turns about node 2 by the angle with 2 sin(theta / 2) = epsilon
        const double cos_theta = 1.0 - 0.5 * opts.epsilon * opts.epsilon;
        const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
        for (const Eigen::MatrixXd& w : res.witnesses) {
            const Configuration x(w);
            const Eigen::VectorXd g = squared_lengths(hinge.graph, x) - hinge.system.rest_sq_lengths();
            CHECK(g.cwiseAbs().maxCoeff() <= 1e-8);
            CHECK((x.flat() - hinge.embedding.flat()).norm() == doctest::Approx(opts.epsilon).epsilon(1e-8));
            CHECK(std::abs(w(2, 1) - cos_theta) < 1e-8);
            CHECK(std::abs(std::abs(w(2, 0) - 1.0) - sin_theta) < 1e-8);
        }
    }
}
