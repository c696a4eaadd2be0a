#include "tensegrity/report.hpp"

namespace tensegrity::report {

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
    return out;
}

json columns_json(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(vector_json(m.col(c)));
    return out;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json complex_vector_json(const continuation::CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
    return out;
}

json nullspace_json(const NullspaceDecomposition& dec) {
    return json{{"tolerance", dec.tolerance},
                {"rigid_motion_dim", dec.rigid_motions.cols()},
                {"flex_dim", dec.flexes.cols()},
                {"rigid_motions", columns_json(dec.rigid_motions)},
                {"flexes", columns_json(dec.flexes)}};
}

json rigidity_json(const RigidityReport& rep) {
    return json{{"nodes", rep.nodes},
                {"dimension", rep.dimension},
                {"members", rep.members},
                {"rank_at_p", rep.rank_at_p},
                {"corank_at_p", rep.corank_at_p},
                {"generic_rank", rep.generic_rank},
                {"generic_corank", rep.generic_corank},
                {"trials", rep.trials},
                {"trials_agree", rep.trials_agree},
                {"rigid_motion_dim", rep.rigid_motion_dim},
                {"flex_dim", rep.nullspace.flexes.cols()},
                {"sandwich_applicable", rep.sandwich_applicable},
                {"verdict", std::string(to_string(rep.verdict))},
                {"seed", rep.seed}};
}

json prestress_json(const PrestressCertificate& cert, const std::vector<SelfStress>& basis) {
    json stresses = json::array();
    for (const SelfStress& s : basis) stresses.push_back(vector_json(s.w));
    json out{{"verdict", std::string(to_string(cert.verdict))},
             {"flex_dim", cert.flex_dim},
             {"stress_dim", cert.stress_dim},
             {"stress_basis", stresses}};
    if (cert.stress.size() != 0) {
        out["coefficients"] = vector_json(cert.coefficients);
        out["stress"] = vector_json(cert.stress);
        out["reduced_matrix"] = matrix_json(cert.reduced);
        out["reduced_eigenvalues"] = vector_json(cert.reduced_eigenvalues);
        out["min_eigenvalue"] = cert.min_eigenvalue;
        out["cables_positive"] = cert.cables_positive;
        out["struts_negative"] = cert.struts_negative;
        json zeros = json::array();
        for (int k : cert.zero_members) zeros.push_back(k);
        out["zero_members"] = zeros;
    }
    return out;
}

json track_json(const continuation::TrackResult& r) {
    return json{{"status", std::string(to_string(r.status))},
                {"endpoint", complex_vector_json(r.endpoint)},
                {"residual", r.residual},
                {"max_imag", r.max_imag()},
                {"steps_accepted", r.steps_accepted},
                {"steps_rejected", r.steps_rejected}};
}

json solve_json(const continuation::SolveResult& res, const std::vector<std::string>& variables) {
    json paths = json::array();
    for (const auto& r : res.paths) {
        json p = track_json(r);
        if (!r.trajectory.empty()) {
            json traj = json::array();
            for (const auto& pt : r.trajectory) traj.push_back(json{{"t", pt.t}, {"x", complex_vector_json(pt.x)}});
            p["trajectory"] = traj;
        }
        paths.push_back(std::move(p));
    }
    return json{{"variables", variables},
                {"gamma", complex_json(res.gamma)},
                {"bezout", res.bezout},
                {"converged", res.count(continuation::TrackStatus::converged)},
                {"diverged", res.count(continuation::TrackStatus::diverged)},
                {"step_underflow", res.count(continuation::TrackStatus::step_underflow)},
                {"paths", paths}};
}

json deform_json(const DeformResult& res) {
    json steps = json::array();
    for (const DeformStep& s : res.steps) {
        json coords = json::array();
        for (Eigen::Index i = 0; i < s.coords.rows(); ++i)
            coords.push_back(complex_vector_json(s.coords.row(i).transpose()));
        steps.push_back(json{{"offset", s.offset},
                             {"real", s.real},
                             {"max_imag", s.max_imag},
                             {"member_residual", s.member_residual},
                             {"coords", coords},
                             {"track", track_json(s.track)}});
    }
    return json{{"status", std::string(to_string(res.status))},
                {"direction", vector_json(res.direction)},
                {"final_coords", matrix_json(res.final_coords)},
                {"flex_cosine", res.flex_cosine},
                {"steps", steps}};
}

json epsilon_json(const EpsilonResult& res) {
    json witnesses = json::array();
    for (const auto& w : res.witnesses) witnesses.push_back(matrix_json(w));
    return json{{"verdict", std::string(to_string(res.verdict))},
                {"unknowns", res.unknowns},
                {"paths", res.paths},
                {"converged", res.converged},
                {"diverged", res.diverged},
                {"failed", res.failed},
                {"real_critical_points", res.real_critical_points},
                {"target_point", vector_json(res.target_point)},
                {"witnesses", witnesses}};
}

}  // namespace tensegrity::report
