#include "tensegrity/prestress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tensegrity {

std::vector<SelfStress> self_stress_basis(const MemberConstraintSystem& sys, const Configuration& p,
                                          double tol_rel) {
    const Eigen::MatrixXd basis = left_nullspace(jacobian_at(sys, p), tol_rel);
    std::vector<SelfStress> out;
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        Eigen::VectorXd w = basis.col(c);
        Eigen::Index at = 0;
        const double biggest = w.cwiseAbs().maxCoeff(&at);
        w /= biggest;
        for (Eigen::Index k = 0; k < w.size(); ++k) {
            if (std::abs(w(k)) > 1e-9) {
                if (w(k) < 0.0) w = -w;
                break;
            }
        }
        out.push_back(SelfStress{std::move(w), static_cast<int>(at)});
    }
    return out;
}

Eigen::MatrixXd stress_matrix(const FrameworkGraph& graph, const Eigen::VectorXd& w) {
    const Eigen::MatrixXd lap = weighted_laplacian(graph, w);
    const int n = graph.node_count();
    const int d = graph.dimension();
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n * d, n * d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < d; ++k) omega(i * d + k, j * d + k) = lap(i, j);
    return omega;
}

StiffnessEnergy stiffness_and_energy(const MemberConstraintSystem& sys, const Configuration& p,
                                     const Eigen::VectorXd& c, const Eigen::VectorXd& w) {
    const FrameworkGraph& graph = sys.graph();
    if (c.size() != graph.member_count()) throw InputError("stiffness vector does not match member count");
    if ((c.array() < 0.0).any()) throw InputError("stiffness coefficients must be non-negative");
    const Eigen::MatrixXd jac = jacobian_at(sys, p);
    StiffnessEnergy out;
    out.stiffness = jac.transpose() * c.asDiagonal() * jac;
    out.energy = stress_matrix(graph, w) + out.stiffness;
    return out;
}

std::string_view to_string(PrestressVerdict v) {
    switch (v) {
        case PrestressVerdict::certificate_found: return "certificate_found";
        case PrestressVerdict::infinitesimally_rigid: return "infinitesimally_rigid";
        case PrestressVerdict::no_self_stress: return "no_self_stress";
        case PrestressVerdict::not_found: return "not_found";
    }
    return "not_found";
}

double reduced_min_eigenvalue(const std::vector<Eigen::MatrixXd>& reduced_stresses,
                              const Eigen::VectorXd& a) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(reduced_stresses.front().rows(),
                                              reduced_stresses.front().cols());
    for (std::size_t i = 0; i < reduced_stresses.size(); ++i)
        m += a(static_cast<Eigen::Index>(i)) * reduced_stresses[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

namespace {

// lambda_min of a linear matrix pencil is concave, so projected supergradient ascent over the
// unit ball converges; several starts only guard against slow progress at eigenvalue kinks.
Eigen::VectorXd maximize_min_eigenvalue(const std::vector<Eigen::MatrixXd>& reduced,
                                        const PrestressOptions& opts, double& best_value) {
    const auto k = static_cast<Eigen::Index>(reduced.size());
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd best = Eigen::VectorXd::Unit(k, 0);
    best_value = -std::numeric_limits<double>::infinity();
    for (int start = 0; start < std::max(1, opts.starts); ++start) {
        Eigen::VectorXd a(k);
        for (Eigen::Index i = 0; i < k; ++i) a(i) = gauss(rng);
        a.normalize();
        Eigen::VectorXd local_best = a;
        double local_value = reduced_min_eigenvalue(reduced, a);
        for (int it = 1; it <= opts.max_iterations; ++it) {
            Eigen::MatrixXd m = Eigen::MatrixXd::Zero(reduced.front().rows(), reduced.front().cols());
            for (Eigen::Index i = 0; i < k; ++i) m += a(i) * reduced[static_cast<std::size_t>(i)];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
            const Eigen::VectorXd u = eig.eigenvectors().col(0);
            Eigen::VectorXd grad(k);
            for (Eigen::Index i = 0; i < k; ++i)
                grad(i) = u.dot(reduced[static_cast<std::size_t>(i)] * u);
            const double gnorm = grad.norm();
            if (gnorm == 0.0) break;
            a += (0.5 / std::sqrt(static_cast<double>(it))) * grad / gnorm;
            if (a.norm() > 1.0) a.normalize();
            const double value = reduced_min_eigenvalue(reduced, a);
            if (value > local_value) {
                local_value = value;
                local_best = a;
            }
        }
        if (local_value > 0.0) {
            // Positive homogeneity: pushing a positive point out to the sphere only helps.
            local_best.normalize();
            local_value = reduced_min_eigenvalue(reduced, local_best);
        }
        if (local_value > best_value) {
            best_value = local_value;
            best = local_best;
        }
    }
    return best;
}

}  // namespace

PrestressCertificate prestress_certificate(const MemberConstraintSystem& sys, const Configuration& p,
                                           std::span<const MemberKind> kinds,
                                           const PrestressOptions& opts) {
    const FrameworkGraph& graph = sys.graph();
    require_shape(graph, p);
    if (!kinds.empty() && static_cast<int>(kinds.size()) != graph.member_count())
        throw InputError("member-kind override does not match member count");
    PrestressCertificate cert;

    const NullspaceDecomposition decomposition = decompose_nullspace(graph, p, opts.tol_rel);
    cert.flexes = decomposition.flexes;
    cert.flex_dim = static_cast<int>(cert.flexes.cols());
    const std::vector<SelfStress> stresses = self_stress_basis(sys, p, opts.tol_rel);
    cert.stress_dim = static_cast<int>(stresses.size());
    if (cert.flex_dim == 0) {
        cert.verdict = PrestressVerdict::infinitesimally_rigid;
        return cert;
    }
    if (stresses.empty()) {
        cert.verdict = PrestressVerdict::no_self_stress;
        return cert;
    }

    const Eigen::MatrixXd& f = cert.flexes;
    std::vector<Eigen::MatrixXd> reduced;
    for (const SelfStress& s : stresses) reduced.push_back(f.transpose() * stress_matrix(graph, s.w) * f);

    Eigen::VectorXd a;
    if (reduced.size() == 1) {
        const double plus = reduced_min_eigenvalue(reduced, Eigen::VectorXd::Constant(1, 1.0));
        const double minus = reduced_min_eigenvalue(reduced, Eigen::VectorXd::Constant(1, -1.0));
        a = Eigen::VectorXd::Constant(1, plus >= minus ? 1.0 : -1.0);
    } else {
        double value = 0.0;
        a = maximize_min_eigenvalue(reduced, opts, value);
    }
    cert.coefficients = a;
    cert.stress = Eigen::VectorXd::Zero(graph.member_count());
    for (std::size_t i = 0; i < stresses.size(); ++i)
        cert.stress += a(static_cast<Eigen::Index>(i)) * stresses[i].w;

    // Re-verify from the combined stress alone, independent of the search.
    cert.reduced = f.transpose() * stress_matrix(graph, cert.stress) * f;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cert.reduced, Eigen::EigenvaluesOnly);
    cert.reduced_eigenvalues = eig.eigenvalues();
    cert.min_eigenvalue = cert.reduced_eigenvalues(0);
    cert.verdict = cert.min_eigenvalue > 0.0 ? PrestressVerdict::certificate_found
                                             : PrestressVerdict::not_found;

    for (int k = 0; k < graph.member_count(); ++k) {
        const MemberKind kind = kinds.empty() ? graph.member(k).kind : kinds[static_cast<std::size_t>(k)];
        const double wk = cert.stress(k);
        if (std::abs(wk) <= opts.sign_margin) cert.zero_members.push_back(k);
        if (kind == MemberKind::cable && !(wk > opts.sign_margin)) cert.cables_positive = false;
        if (kind == MemberKind::strut && !(wk < -opts.sign_margin)) cert.struts_negative = false;
    }
    return cert;
}

}  // namespace tensegrity
