/**
 * @file continuation.hpp
 * @brief Predictor-corrector path tracking and total-degree solving.
 *
 * h(x, t) = (1 - t) f(x) + gamma t g(x). Paths run from t = 1 (start system g, known roots)
 * to t = 0 (target f). Prediction integrates the Davidenko ODE dx/dt = -h_x^{-1} h_t with RK4;
 * correction is Newton on h(., t) = 0.
 */
#pragma once

#include "tensegrity/multipoly.hpp"

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace tensegrity::continuation {

/// Raised when a solve would need more paths than the configured budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Homotopy {
public:
    /// Throws InputError unless both systems are square with equal sizes and |gamma| = 1.
    Homotopy(PolySystem target, PolySystem start, Complex gamma = 1.0);

    const PolySystem& target() const { return target_; }
    const PolySystem& start() const { return start_; }
    Complex gamma() const { return gamma_; }
    int size() const { return target_.variable_count(); }

    CVector evaluate(const CVector& x, double t) const;
    /// Value h, Jacobian h_x, and dh/dt at (x, t).
    void evaluate(const CVector& x, double t, CVector& h, CMatrix& hx, CVector& ht) const;

private:
    PolySystem target_;
    PolySystem start_;
    Complex gamma_;
};

/// no_real_solution is only produced by real parameter homotopies whose endpoint is not real.
enum class TrackStatus { converged, diverged, step_underflow, no_real_solution };

std::string_view to_string(TrackStatus s);

struct TrackOptions {
    double initial_step = 1e-2;
    double max_step = 0.1;
    double min_step = 1e-12;
    double t_cutoff = 1e-4;
    int max_newton = 3;
    double newton_tol = 1e-10;     ///< relative step size for corrector acceptance
    int step_growth_after = 5;     ///< consecutive accepted steps before doubling
    double divergence_norm = 1e10;
    double start_tol = 1e-8;       ///< relative residual allowed at the start point
    double end_tol = 1e-8;         ///< converged iff |f| <= end_tol (1 + |x|^deg)
    int polish_iterations = 30;
    int max_steps = 100000;
    bool record_trajectory = false;
};

struct TrajectoryPoint {
    double t;
    CVector x;
};

struct TrackResult {
    TrackStatus status = TrackStatus::step_underflow;
    CVector start;
    CVector endpoint;
    double residual = 0.0;  ///< |f(endpoint)|
    int steps_accepted = 0;
    int steps_rejected = 0;
    double t_reached = 1.0;
    std::vector<TrajectoryPoint> trajectory;

    bool converged() const { return status == TrackStatus::converged; }
    double max_imag() const;
};

/// Track the path through x0 (a root of h(., 1)) down to t = 0.
/// Throws InputError if x0 has the wrong size or is not a root of the start system.
TrackResult track_path(const Homotopy& h, const CVector& x0, const TrackOptions& opts = {});

struct SolveOptions {
    TrackOptions track;
    std::uint64_t seed = 0;
    std::uint64_t path_budget = 100000;
    /// Track in projective space on a random affine chart so that paths heading to infinity
    /// stay bounded; endpoints are dehomogenized afterwards.
    bool projective = true;
    /// Projective endpoints with |X_0| <= infinity_tol |X| count as solutions at infinity.
    double infinity_tol = 1e-6;
};

struct SolveResult {
    Complex gamma;
    std::uint64_t bezout = 0;
    std::vector<TrackResult> paths;  ///< in start-root order

    int count(TrackStatus s) const;
    std::vector<CVector> converged_endpoints() const;
    /// Converged endpoints whose imaginary parts are all within tau_imag, as real vectors.
    std::vector<Eigen::VectorXd> real_endpoints(double tau_imag = 1e-6) const;
};

/// Product of equation degrees, saturating at UINT64_MAX.
std::uint64_t bezout_number(const PolySystem& f);

/// Start system x_i^{d_i} - 1 and its prod d_i roots, in lexicographic root-index order.
PolySystem total_degree_start_system(const std::vector<int>& degrees);
std::vector<CVector> total_degree_start_roots(const std::vector<int>& degrees);

/// Throws InputError for non-square or constant equations, BudgetError when the Bezout
/// number exceeds the budget.
SolveResult solve_total_degree(const PolySystem& f, const SolveOptions& opts = {});

}  // namespace tensegrity::continuation
