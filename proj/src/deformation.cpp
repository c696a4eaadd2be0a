#include "tensegrity/deformation.hpp"

#include "tensegrity/rigidity.hpp"

#include <cmath>
#include <random>

namespace tensegrity {

using continuation::CMatrix;
using continuation::Complex;
using continuation::CVector;
using continuation::MultiPoly;
using continuation::PolySystem;
using continuation::TrackResult;
using continuation::TrackStatus;

Eigen::VectorXd PinnedSystem::to_free(const Configuration& x) const {
    if (x.node_count() != nodes || x.dimension() != dimension)
        throw InputError("configuration shape does not match the pinned system");
    const Eigen::VectorXd flat = x.flat();
    Eigen::VectorXd out(variable_count());
    for (int v = 0; v < variable_count(); ++v) out(v) = flat(free_indices[static_cast<std::size_t>(v)]);
    return out;
}

Eigen::MatrixXcd PinnedSystem::to_coords(const CVector& free) const {
    if (free.size() != variable_count()) throw InputError("free vector has the wrong length");
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(nodes, dimension);
    for (int v = 0; v < variable_count(); ++v) {
        const int f = free_indices[static_cast<std::size_t>(v)];
        c(f / dimension, f % dimension) = free(v);
    }
    return c;
}

Configuration PinnedSystem::real_configuration(const CVector& free) const {
    return Configuration(to_coords(free).real());
}

Eigen::VectorXd PinnedSystem::embed(const Eigen::VectorXd& free) const {
    if (free.size() != variable_count()) throw InputError("free vector has the wrong length");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(nodes * dimension);
    for (int v = 0; v < variable_count(); ++v) out(free_indices[static_cast<std::size_t>(v)]) = free(v);
    return out;
}

PinnedSystem pinned_member_system(const MemberConstraintSystem& sys) {
    const FrameworkGraph& graph = sys.graph();
    PinnedSystem ps;
    ps.nodes = graph.node_count();
    ps.dimension = graph.dimension();
    ps.free_indices = free_coordinate_indices(ps.nodes, ps.dimension);
    const int n_vars = ps.variable_count();
    std::vector<int> variable_of(static_cast<std::size_t>(graph.coordinate_count()), -1);
    for (int v = 0; v < n_vars; ++v) variable_of[static_cast<std::size_t>(ps.free_indices[static_cast<std::size_t>(v)])] = v;

    auto coordinate = [&](int node, int k) {
        const int v = variable_of[static_cast<std::size_t>(node * ps.dimension + k)];
        return v < 0 ? MultiPoly(n_vars) : MultiPoly::variable(n_vars, v);
    };
    std::vector<MultiPoly> eqs;
    for (int r = 0; r < graph.member_count(); ++r) {
        const Member& m = graph.member(r);
        MultiPoly g = MultiPoly::constant(n_vars, -sys.rest_sq_lengths()(r));
        for (int k = 0; k < ps.dimension; ++k) {
            const MultiPoly diff = coordinate(m.i, k) - coordinate(m.j, k);
            g += diff * diff;
        }
        eqs.push_back(std::move(g));
    }
    ps.members = PolySystem(std::move(eqs));
    return ps;
}

Eigen::MatrixXd pinned_jacobian(const PinnedSystem& ps, const Configuration& p) {
    CVector value;
    CMatrix jac;
    ps.members.evaluate_with_jacobian(ps.to_free(p).cast<Complex>(), value, jac);
    return jac.real();
}

std::string_view to_string(DirectionKind kind) {
    switch (kind) {
        case DirectionKind::flex: return "flex";
        case DirectionKind::random: return "random";
        case DirectionKind::explicit_vector: return "vector";
    }
    return "flex";
}

namespace {

void require_pinned(const Configuration& p) {
    if (!is_pinned(p, 1e-12))
        throw InputError("configuration is not pinned; apply pin_moving_frame first");
}

MultiPoly hyperplane(const Eigen::VectorXd& v, const Eigen::VectorXd& xp, double offset) {
    const auto n = static_cast<int>(v.size());
    MultiPoly l = MultiPoly::constant(n, -(v.dot(xp) + offset));
    for (int k = 0; k < n; ++k) l += v(k) * MultiPoly::variable(n, k);
    return l;
}

PolySystem deformation_system(const PinnedSystem& ps, const Eigen::MatrixXd& weights,
                              const Eigen::VectorXd& v, const Eigen::VectorXd& xp, double offset) {
    std::vector<MultiPoly> eqs = ps.members.equations();
    eqs.push_back(hyperplane(v, xp, offset));
    PolySystem full(std::move(eqs));
    if (weights.size() == 0) return full;
    return continuation::combine(weights, full);
}

double max_abs_residual(const MemberConstraintSystem& sys, const Configuration& x) {
    const Eigen::VectorXd r = evaluate_members(sys, x).residuals;
    return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

double flex_cosine(const MemberConstraintSystem& sys, const Configuration& p, const Eigen::VectorXd& disp) {
    const NullspaceDecomposition dec = decompose_nullspace(sys.graph(), p);
    if (dec.flexes.cols() == 0) return 0.0;
    const Eigen::MatrixXd& r = dec.rigid_motions;
    const Eigen::VectorXd projected = disp - r * (r.transpose() * disp);
    const double denom = projected.norm() * dec.flexes.col(0).norm();
    if (denom == 0.0) return 0.0;
    return std::abs(projected.dot(dec.flexes.col(0))) / denom;
}

}  // namespace

DeformResult deform_framework(const MemberConstraintSystem& sys, const Configuration& p,
                              const DeformOptions& opts) {
    require_shape(sys.graph(), p);
    require_pinned(p);
    if (!std::isfinite(opts.epsilon)) throw InputError("epsilon must be finite");
    if (opts.steps < 1) throw InputError("steps must be at least 1");

    const PinnedSystem ps = pinned_member_system(sys);
    const int n_vars = ps.variable_count();
    const int equations = ps.members.equation_count() + 1;
    if (equations < n_vars)
        throw InputError("pinned system is underdetermined: " + std::to_string(equations) +
                         " equations in " + std::to_string(n_vars) + " variables");
    const Eigen::VectorXd xp = ps.to_free(p);

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    DeformResult out;
    Eigen::VectorXd v;
    switch (opts.direction) {
        case DirectionKind::flex: {
            const Eigen::MatrixXd null = numerical_nullspace(pinned_jacobian(ps, p));
            if (null.cols() == 0) throw InputError("no infinitesimal flex at p; use a random direction");
            v = null.col(0);
            Eigen::Index at = 0;
            v.cwiseAbs().maxCoeff(&at);
            if (v(at) < 0.0) v = -v;
            break;
        }
        case DirectionKind::random:
            v.resize(n_vars);
            for (int k = 0; k < n_vars; ++k) v(k) = gauss(rng);
            break;
        case DirectionKind::explicit_vector:
            if (opts.vector.size() != n_vars)
                throw InputError("direction vector must have " + std::to_string(n_vars) + " entries");
            v = opts.vector;
            break;
    }
    if (!(v.norm() > 0.0) || !v.allFinite()) throw InputError("direction vector must be nonzero");
    v.normalize();
    out.direction = v;

    Eigen::MatrixXd weights;
    if (equations > n_vars) {
        weights.resize(n_vars, equations);
        for (int i = 0; i < n_vars; ++i)
            for (int j = 0; j < equations; ++j) weights(i, j) = gauss(rng);
    }

    CVector x = xp.cast<Complex>();
    out.status = TrackStatus::converged;
    for (int s = 1; s <= opts.steps; ++s) {
        const double from = opts.epsilon * (s - 1) / opts.steps;
        const double to = opts.epsilon * s / opts.steps;
        const continuation::Homotopy h(deformation_system(ps, weights, v, xp, to),
                                       deformation_system(ps, weights, v, xp, from), 1.0);
        DeformStep step;
        step.offset = to;
        step.track = continuation::track_path(h, x, opts.track);
        step.coords = ps.to_coords(step.track.endpoint);
        step.max_imag = step.track.max_imag();
        step.real = step.track.converged() && step.max_imag <= opts.tau_imag;
        step.member_residual = max_abs_residual(sys, ps.real_configuration(step.track.endpoint));
        const bool accepted = step.real;
        if (accepted) x = step.track.endpoint;
        out.steps.push_back(std::move(step));
        if (!accepted) {
            out.status = TrackStatus::no_real_solution;
            break;
        }
    }
    out.final_coords = ps.to_coords(x).real();
    out.flex_cosine = flex_cosine(sys, p, ps.embed(x.real() - xp));
    return out;
}

std::string_view to_string(EpsilonVerdict v) {
    switch (v) {
        case EpsilonVerdict::epsilon_locally_rigid: return "epsilon_locally_rigid";
        case EpsilonVerdict::deformation_found: return "deformation_found";
        case EpsilonVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

EpsilonResult epsilon_rigidity_check(const MemberConstraintSystem& sys, const Configuration& p,
                                     const EpsilonOptions& opts) {
    require_shape(sys.graph(), p);
    require_pinned(p);
    if (!(opts.epsilon > 0.0) || !std::isfinite(opts.epsilon)) throw InputError("epsilon must be positive");

    const PinnedSystem ps = pinned_member_system(sys);
    const int n_vars = ps.variable_count();
    const int m = ps.members.equation_count();
    const int total = n_vars + m + 1;  // x, lambda, mu
    const int mu = n_vars + m;
    const Eigen::VectorXd xp = ps.to_free(p);

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    EpsilonResult out;
    out.unknowns = total;
    out.target_point.resize(n_vars);
    for (int k = 0; k < n_vars; ++k) out.target_point(k) = xp(k) + unit(rng);
    const Eigen::VectorXd& q = out.target_point;

    auto var = [total](int i) { return MultiPoly::variable(total, i); };
    std::vector<MultiPoly> eqs;
    std::vector<MultiPoly> lifted;
    for (int i = 0; i < m; ++i) lifted.push_back(ps.members[i].lifted(total));
    for (const MultiPoly& g : lifted) eqs.push_back(g);

    MultiPoly sphere = MultiPoly::constant(total, -opts.epsilon * opts.epsilon);
    for (int k = 0; k < n_vars; ++k) {
        const MultiPoly d = var(k) - MultiPoly::constant(total, xp(k));
        sphere += d * d;
    }
    eqs.push_back(sphere);

    // Stationarity of |x - q|^2 / 2 against the member and sphere constraints.
    for (int k = 0; k < n_vars; ++k) {
        MultiPoly eq = var(k) - MultiPoly::constant(total, q(k));
        for (int i = 0; i < m; ++i) eq -= var(n_vars + i) * lifted[static_cast<std::size_t>(i)].derivative(k);
        eq -= 2.0 * var(mu) * (var(k) - MultiPoly::constant(total, xp(k)));
        eqs.push_back(std::move(eq));
    }
    const PolySystem system(std::move(eqs));

    continuation::SolveOptions solve;
    solve.track = opts.track;
    solve.seed = rng();
    solve.path_budget = opts.path_budget;
    const continuation::SolveResult res = continuation::solve_total_degree(system, solve);

    out.paths = res.paths.size();
    out.converged = res.count(TrackStatus::converged);
    out.diverged = res.count(TrackStatus::diverged);
    out.failed = static_cast<int>(out.paths) - out.converged - out.diverged;
    for (const TrackResult& r : res.paths) {
        if (!r.converged()) continue;
        const CVector xs = r.endpoint.head(n_vars);
        if (xs.imag().cwiseAbs().maxCoeff() > opts.tau_imag) continue;
        ++out.real_critical_points;
        const Configuration c = ps.real_configuration(xs);
        const double on_sphere = std::abs((xs.real() - xp).squaredNorm() - opts.epsilon * opts.epsilon);
        if (max_abs_residual(sys, c) <= opts.tau_feas && on_sphere <= opts.tau_feas)
            out.witnesses.push_back(c.coords());
    }
    if (!out.witnesses.empty()) {
        out.verdict = EpsilonVerdict::deformation_found;
    } else if (out.paths > 0 &&
               static_cast<double>(out.failed) / static_cast<double>(out.paths) > opts.max_failure_fraction) {
        out.verdict = EpsilonVerdict::inconclusive;
    } else {
        out.verdict = EpsilonVerdict::epsilon_locally_rigid;
    }
    return out;
}

}  // namespace tensegrity
