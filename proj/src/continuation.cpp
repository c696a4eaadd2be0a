#include "tensegrity/continuation.hpp"

#include "tensegrity/framework.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace tensegrity::continuation {

Homotopy::Homotopy(PolySystem target, PolySystem start, Complex gamma)
    : target_(std::move(target)), start_(std::move(start)), gamma_(gamma) {
    if (!target_.is_square() || !start_.is_square())
        throw InputError("homotopy systems must be square");
    if (target_.variable_count() != start_.variable_count())
        throw InputError("start and target systems differ in size");
    if (std::abs(std::abs(gamma_) - 1.0) > 1e-12) throw InputError("gamma must lie on the unit circle");
}

CVector Homotopy::evaluate(const CVector& x, double t) const {
    return (1.0 - t) * target_.evaluate(x) + gamma_ * t * start_.evaluate(x);
}

void Homotopy::evaluate(const CVector& x, double t, CVector& h, CMatrix& hx, CVector& ht) const {
    CVector f, g;
    CMatrix fx, gx;
    target_.evaluate_with_jacobian(x, f, fx);
    start_.evaluate_with_jacobian(x, g, gx);
    const Complex gt = gamma_ * t;
    h = (1.0 - t) * f + gt * g;
    hx = (1.0 - t) * fx + gt * gx;
    ht = gamma_ * g - f;
}

std::string_view to_string(TrackStatus s) {
    switch (s) {
        case TrackStatus::converged: return "converged";
        case TrackStatus::diverged: return "diverged";
        case TrackStatus::step_underflow: return "step_underflow";
        case TrackStatus::no_real_solution: return "no_real_solution";
    }
    return "step_underflow";
}

double TrackResult::max_imag() const {
    if (endpoint.size() == 0) return 0.0;
    return endpoint.imag().cwiseAbs().maxCoeff();
}

namespace {

bool solve_linear(const CMatrix& a, const CVector& b, CVector& x) {
    Eigen::PartialPivLU<CMatrix> lu(a);
    if (!(lu.rcond() > 1e-14)) return false;
    x = lu.solve(b);
    return x.allFinite();
}

bool tangent(const Homotopy& h, const CVector& x, double t, CVector& dx) {
    CVector v, ht;
    CMatrix hx;
    h.evaluate(x, t, v, hx, ht);
    return solve_linear(hx, -ht, dx);
}

bool rk4_predict(const Homotopy& h, const CVector& x, double t, double dt, CVector& out) {
    CVector k1, k2, k3, k4;
    if (!tangent(h, x, t, k1)) return false;
    if (!tangent(h, x + (0.5 * dt) * k1, t + 0.5 * dt, k2)) return false;
    if (!tangent(h, x + (0.5 * dt) * k2, t + 0.5 * dt, k3)) return false;
    if (!tangent(h, x + dt * k3, t + dt, k4)) return false;
    out = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return out.allFinite();
}

// Newton on h(., t) with a contraction check so that a corrector that wanders toward another
// path is rejected rather than accepted.
bool correct(const Homotopy& h, CVector& x, double t, const TrackOptions& opts) {
    CVector v, ht, dx;
    CMatrix hx;
    double previous = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_newton; ++it) {
        h.evaluate(x, t, v, hx, ht);
        if (!solve_linear(hx, -v, dx)) return false;
        const double size = dx.norm();
        if (it > 0 && size > 0.5 * previous) return false;
        x += dx;
        if (size <= opts.newton_tol * (1.0 + x.norm())) return true;
        previous = size;
    }
    return false;
}

double relative_bound(double tol, const CVector& x, int degree) {
    return tol * (1.0 + std::pow(x.norm(), std::max(degree, 1)));
}

}  // namespace

TrackResult track_path(const Homotopy& h, const CVector& x0, const TrackOptions& opts) {
    if (x0.size() != h.size()) throw InputError("start point has the wrong dimension");
    const double start_residual = h.start().evaluate(x0).norm();
    if (!(start_residual <= relative_bound(opts.start_tol, x0, h.start().max_degree())))
        throw InputError("start point is not a root of the start system");

    TrackResult res;
    res.start = x0;
    CVector x = x0;
    double t = 1.0;
    double step = std::min(opts.initial_step, opts.max_step);
    int streak = 0;
    if (opts.record_trajectory) res.trajectory.push_back({t, x});

    {
        CVector v, ht;
        CMatrix hx;
        h.evaluate(x, t, v, hx, ht);
        Eigen::PartialPivLU<CMatrix> lu(hx);
        if (!(lu.rcond() > 1e-14)) {
            res.status = TrackStatus::step_underflow;
            res.endpoint = x;
            return res;
        }
    }

    while (t > opts.t_cutoff) {
        if (res.steps_accepted + res.steps_rejected >= opts.max_steps) {
            res.status = TrackStatus::step_underflow;
            res.endpoint = x;
            res.t_reached = t;
            return res;
        }
        const double dt = std::min(step, t - opts.t_cutoff);
        const double t_next = t - dt;
        CVector candidate;
        const bool ok = rk4_predict(h, x, t, -dt, candidate) && correct(h, candidate, t_next, opts);
        if (ok) {
            x = candidate;
            t = t_next;
            ++res.steps_accepted;
            if (opts.record_trajectory) res.trajectory.push_back({t, x});
            if (x.norm() > opts.divergence_norm) {
                res.status = TrackStatus::diverged;
                res.endpoint = x;
                res.t_reached = t;
                return res;
            }
            if (++streak >= opts.step_growth_after) {
                step = std::min(2.0 * step, opts.max_step);
                streak = 0;
            }
        } else {
            ++res.steps_rejected;
            streak = 0;
            step *= 0.5;
            if (step < opts.min_step) {
                res.status = TrackStatus::step_underflow;
                res.endpoint = x;
                res.t_reached = t;
                return res;
            }
        }
    }
    res.t_reached = t;

    // Endgame: Newton on the target itself.
    const PolySystem& f = h.target();
    CVector v, dx;
    CMatrix fx;
    for (int it = 0; it < opts.polish_iterations; ++it) {
        f.evaluate_with_jacobian(x, v, fx);
        if (!solve_linear(fx, -v, dx)) break;
        x += dx;
        if (dx.norm() <= 1e-14 * (1.0 + x.norm())) break;
    }
    res.endpoint = x;
    res.residual = x.allFinite() ? f.evaluate(x).norm() : std::numeric_limits<double>::infinity();
    if (opts.record_trajectory) res.trajectory.push_back({0.0, x});
    res.status = res.residual <= relative_bound(opts.end_tol, x, f.max_degree()) ? TrackStatus::converged
                                                                                 : TrackStatus::diverged;
    if (res.status == TrackStatus::converged) res.t_reached = 0.0;
    return res;
}

int SolveResult::count(TrackStatus s) const {
    return static_cast<int>(std::count_if(paths.begin(), paths.end(),
                                          [s](const TrackResult& r) { return r.status == s; }));
}

std::vector<CVector> SolveResult::converged_endpoints() const {
    std::vector<CVector> out;
    for (const TrackResult& r : paths)
        if (r.converged()) out.push_back(r.endpoint);
    return out;
}

std::vector<Eigen::VectorXd> SolveResult::real_endpoints(double tau_imag) const {
    std::vector<Eigen::VectorXd> out;
    for (const TrackResult& r : paths)
        if (r.converged() && r.max_imag() <= tau_imag) out.push_back(r.endpoint.real());
    return out;
}

std::uint64_t bezout_number(const PolySystem& f) {
    std::uint64_t total = 1;
    for (int d : f.degrees()) {
        const auto ud = static_cast<std::uint64_t>(std::max(d, 0));
        if (ud != 0 && total > std::numeric_limits<std::uint64_t>::max() / ud)
            return std::numeric_limits<std::uint64_t>::max();
        total *= ud;
    }
    return total;
}

PolySystem total_degree_start_system(const std::vector<int>& degrees) {
    const int n = static_cast<int>(degrees.size());
    std::vector<MultiPoly> eqs;
    for (int i = 0; i < n; ++i) {
        MultiPoly p(n);
        MultiPoly::Exponents e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = degrees[static_cast<std::size_t>(i)];
        p.add_term(e, 1.0);
        p.add_term(MultiPoly::Exponents(static_cast<std::size_t>(n), 0), -1.0);
        eqs.push_back(std::move(p));
    }
    return PolySystem(std::move(eqs));
}

std::vector<CVector> total_degree_start_roots(const std::vector<int>& degrees) {
    const std::size_t n = degrees.size();
    std::vector<CVector> out;
    std::vector<int> idx(n, 0);
    while (true) {
        CVector x(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i)
            x(static_cast<Eigen::Index>(i)) =
                std::polar(1.0, 2.0 * std::numbers::pi * idx[i] / degrees[i]);
        out.push_back(std::move(x));
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++idx[k] < degrees[k]) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
        if (n == 0) return out;
    }
}

namespace {

// Affine Newton on f from x; returns the refined point.
CVector polish_affine(const PolySystem& f, CVector x, int iterations) {
    CVector v, dx;
    CMatrix fx;
    for (int it = 0; it < iterations; ++it) {
        f.evaluate_with_jacobian(x, v, fx);
        if (!solve_linear(fx, -v, dx)) break;
        x += dx;
        if (dx.norm() <= 1e-14 * (1.0 + x.norm())) break;
    }
    return x;
}

TrackResult dehomogenize(TrackResult r, const PolySystem& f, const SolveOptions& opts) {
    const CVector big = r.endpoint;
    const Complex x0 = big(0);
    for (auto& pt : r.trajectory)
        if (std::abs(pt.x(0)) > 0.0) pt.x = (pt.x.tail(pt.x.size() - 1) / pt.x(0)).eval();
        else pt.x = pt.x.tail(pt.x.size() - 1).eval();
    r.start = (r.start.tail(r.start.size() - 1) / r.start(0)).eval();
    if (std::abs(x0) <= opts.infinity_tol * big.norm() || !big.allFinite()) {
        // Solution at infinity (or a failed path heading there): report the direction.
        r.endpoint = big.tail(big.size() - 1);
        r.residual = std::numeric_limits<double>::infinity();
        if (r.status == TrackStatus::converged) r.status = TrackStatus::diverged;
        return r;
    }
    CVector x = big.tail(big.size() - 1) / x0;
    if (r.status != TrackStatus::converged) {
        r.endpoint = x;
        r.residual = f.evaluate(x).norm();
        return r;
    }
    x = polish_affine(f, x, 5);
    r.endpoint = x;
    r.residual = x.allFinite() ? f.evaluate(x).norm() : std::numeric_limits<double>::infinity();
    if (!r.trajectory.empty()) r.trajectory.back().x = x;
    r.status = r.residual <= relative_bound(opts.track.end_tol, x, f.max_degree()) ? TrackStatus::converged
                                                                                   : TrackStatus::diverged;
    return r;
}

}  // namespace

SolveResult solve_total_degree(const PolySystem& f, const SolveOptions& opts) {
    if (f.equation_count() == 0 || !f.is_square())
        throw InputError("total-degree solving needs a square system");
    const std::vector<int> degrees = f.degrees();
    if (std::any_of(degrees.begin(), degrees.end(), [](int d) { return d < 1; }))
        throw InputError("every equation must have positive degree");

    SolveResult out;
    out.bezout = bezout_number(f);
    if (out.bezout > opts.path_budget)
        throw BudgetError("total-degree homotopy needs " + std::to_string(out.bezout) +
                          " paths, budget is " + std::to_string(opts.path_budget));

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    out.gamma = std::polar(1.0, angle(rng));
    const PolySystem g = total_degree_start_system(degrees);
    const std::vector<CVector> roots = total_degree_start_roots(degrees);

    if (!opts.projective) {
        const Homotopy h(f, g, out.gamma);
        for (const CVector& x0 : roots) out.paths.push_back(track_path(h, x0, opts.track));
        return out;
    }

    // Homogenize both systems with X_0 first and close them with the same random chart
    // a . X = 1, which is unaffected by the homotopy.
    const int n = f.variable_count();
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector chart(n + 1);
    for (int k = 0; k <= n; ++k) chart(k) = Complex(gauss(rng), gauss(rng));
    chart /= chart.norm();
    MultiPoly patch = MultiPoly::constant(n + 1, -1.0);
    for (int k = 0; k <= n; ++k) patch += chart(k) * MultiPoly::variable(n + 1, k);
    std::vector<MultiPoly> fh, gh;
    for (int i = 0; i < n; ++i) {
        fh.push_back(f[i].homogenized(degrees[static_cast<std::size_t>(i)]));
        gh.push_back(g[i].homogenized(degrees[static_cast<std::size_t>(i)]));
    }
    fh.push_back(patch);
    gh.push_back(patch);
    const Homotopy h(PolySystem(std::move(fh)), PolySystem(std::move(gh)), out.gamma);
    for (const CVector& x0 : roots) {
        CVector big(n + 1);
        big(0) = 1.0;
        big.tail(n) = x0;
        big /= chart.cwiseProduct(big).sum();
        out.paths.push_back(dehomogenize(track_path(h, big, opts.track), f, opts));
    }
    return out;
}

}  // namespace tensegrity::continuation
