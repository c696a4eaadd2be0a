#include "tensegrity/cli.hpp"

#include "tensegrity/deformation.hpp"
#include "tensegrity/ideals.hpp"
#include "tensegrity/prestress.hpp"
#include "tensegrity/render.hpp"
#include "tensegrity/report.hpp"
#include "tensegrity/rigidity.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

namespace tensegrity::cli {

using nlohmann::json;

continuation::MultiPoly to_multipoly(const symbolic::RationalPoly& p) {
    continuation::MultiPoly out(p.variable_count());
    for (const auto& [e, c] : p.terms()) out.add_term(e, c.get_d());
    return out;
}

PolynomialSystemFile load_polynomial_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open polynomial system '" + path + "'");
    try {
        const json doc = json::parse(in);
        PolynomialSystemFile out;
        out.variables = doc.at("variables").get<std::vector<std::string>>();
        const symbolic::PolyRing ring(out.variables);
        std::vector<continuation::MultiPoly> eqs;
        for (const auto& e : doc.at("equations")) eqs.push_back(to_multipoly(ring.parse(e.get<std::string>())));
        out.system = continuation::PolySystem(std::move(eqs));
        return out;
    } catch (const json::exception& e) {
        throw InputError("malformed polynomial system '" + path + "': " + e.what());
    }
}

namespace {

struct Common {
    std::string input;
    std::uint64_t seed = 0;
    double tol = kDefaultRankTolerance;
    std::string out_dir;
    bool svg = false;
};

struct Options {
    Common common;
    int trials = 3;
    std::string partition;
    double epsilon = std::numeric_limits<double>::quiet_NaN();
    int steps = 1;
    std::uint64_t budget = 0;
    std::string direction = "flex";
    bool with_flexes = false;
};

void add_common(CLI::App* sub, Common& c, const std::string& what) {
    sub->add_option("input", c.input, what)->required();
    sub->add_option("--seed", c.seed, "Seed for every random draw")->capture_default_str();
    sub->add_option("--tol", c.tol, "Relative rank tolerance")->capture_default_str();
    sub->add_option("--out", c.out_dir, "Directory for report files");
    sub->add_flag("--svg", c.svg, "Also write an SVG plot");
}

class Emitter {
public:
    Emitter(std::string command, const Common& c, std::ostream& out) : command_(std::move(command)), c_(c), out_(out) {
        if (!c_.out_dir.empty()) std::filesystem::create_directories(c_.out_dir);
    }

    void report(const json& j) {
        const std::string text = j.dump(2) + "\n";
        out_ << text;
        if (!c_.out_dir.empty()) write(std::filesystem::path(c_.out_dir) / (command_ + ".json"), text);
    }

    void svg(const std::string& doc) {
        const std::filesystem::path dir = c_.out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(c_.out_dir);
        write(dir / (command_ + ".svg"), doc);
    }

private:
    static void write(const std::filesystem::path& path, const std::string& text) {
        std::ofstream f(path);
        if (!f) throw InputError("cannot write '" + path.string() + "'");
        f << text;
    }

    std::string command_;
    const Common& c_;
    std::ostream& out_;
};

json framework_summary(const LoadedFramework& fw, const std::string& path) {
    return json{{"input", std::filesystem::path(path).filename().string()},
                {"nodes", fw.graph.node_count()},
                {"dimension", fw.graph.dimension()},
                {"members", fw.graph.member_count()}};
}

int cmd_analyze(const Options& o, std::ostream& out) {
    const LoadedFramework fw = load_framework_file(o.common.input);
    const RigidityReport rep = rigidity_report(fw.system, fw.embedding, o.trials, o.common.seed, o.common.tol);
    json j = framework_summary(fw, o.common.input);
    j["rigidity"] = report::rigidity_json(rep);
    Emitter emit("analyze", o.common, out);
    emit.report(j);
    if (o.common.svg) {
        Eigen::MatrixXd field(fw.graph.coordinate_count(), rep.nullspace.flexes.cols());
        field << rep.nullspace.flexes;
        emit.svg(render_framework_svg(fw.graph, fw.embedding, field));
    }
    return kExitOk;
}

int cmd_flexes(const Options& o, std::ostream& out) {
    const LoadedFramework fw = load_framework_file(o.common.input);
    const NullspaceDecomposition dec = decompose_nullspace(fw.graph, fw.embedding, o.common.tol);
    json j = framework_summary(fw, o.common.input);
    j["nullspace"] = report::nullspace_json(dec);
    j["corank_at_p"] = dec.rigid_motions.cols() + dec.flexes.cols();
    Emitter emit("flexes", o.common, out);
    emit.report(j);
    if (o.common.svg) {
        Eigen::MatrixXd field(fw.graph.coordinate_count(), dec.rigid_motions.cols() + dec.flexes.cols());
        field << dec.rigid_motions, dec.flexes;
        emit.svg(render_framework_svg(fw.graph, fw.embedding, field));
    }
    return kExitOk;
}

int cmd_prestress(const Options& o, std::ostream& out) {
    const LoadedFramework fw = load_framework_file(o.common.input);
    std::vector<MemberKind> kinds;
    if (!o.partition.empty()) {
        const auto it = fw.partitions.find(o.partition);
        if (it == fw.partitions.end()) throw InputError("framework has no partition named '" + o.partition + "'");
        kinds = it->second;
    }
    PrestressOptions opts;
    opts.tol_rel = o.common.tol;
    opts.seed = o.common.seed;
    const PrestressCertificate cert = prestress_certificate(fw.system, fw.embedding, kinds, opts);
    json j = framework_summary(fw, o.common.input);
    j["partition"] = o.partition.empty() ? json(nullptr) : json(o.partition);
    j["prestress"] = report::prestress_json(cert, self_stress_basis(fw.system, fw.embedding, o.common.tol));
    Emitter emit("prestress", o.common, out);
    emit.report(j);
    if (o.common.svg) {
        const FrameworkGraph g = kinds.empty() ? fw.graph : fw.graph.with_kinds(kinds);
        emit.svg(render_framework_svg(g, fw.embedding, cert.flexes));
    }
    return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
    const PolynomialSystemFile file = load_polynomial_system(o.common.input);
    continuation::SolveOptions opts;
    opts.seed = o.common.seed;
    if (o.budget > 0) opts.path_budget = o.budget;
    opts.track.record_trajectory = o.common.svg;
    const continuation::SolveResult res = continuation::solve_total_degree(file.system, opts);
    json j = report::solve_json(res, file.variables);
    json roots = json::array();
    for (const auto& r : res.converged_endpoints()) roots.push_back(report::complex_vector_json(r));
    j["roots"] = roots;
    Emitter emit("solve", o.common, out);
    emit.report(j);
    if (o.common.svg) {
        std::vector<std::vector<std::complex<double>>> paths;
        for (const auto& r : res.paths) {
            std::vector<std::complex<double>> path;
            for (const auto& pt : r.trajectory) path.push_back(pt.x(0));
            paths.push_back(std::move(path));
        }
        emit.svg(render_trajectories_svg(paths));
    }
    return kExitOk;
}

DirectionKind direction_from(const std::string& name) {
    if (name == "flex") return DirectionKind::flex;
    if (name == "random") return DirectionKind::random;
    throw InputError("direction must be 'flex' or 'random'");
}

int cmd_deform(const Options& o, std::ostream& out) {
    const LoadedFramework fw = load_framework_file(o.common.input);
    const Configuration p = pin_moving_frame(fw.embedding);
    DeformOptions opts;
    opts.direction = direction_from(o.direction);
    if (!std::isnan(o.epsilon)) opts.epsilon = o.epsilon;
    opts.steps = o.steps;
    opts.seed = o.common.seed;
    const DeformResult res = deform_framework(fw.system, p, opts);
    json j = framework_summary(fw, o.common.input);
    j["epsilon"] = opts.epsilon;
    j["pinned_embedding"] = report::matrix_json(p.coords());
    j["deformation"] = report::deform_json(res);
    Emitter emit("deform", o.common, out);
    emit.report(j);
    if (o.common.svg) {
        const Eigen::VectorXd disp = Configuration(res.final_coords).flat() - p.flat();
        emit.svg(render_framework_svg(fw.graph, p, disp));
    }
    return kExitOk;
}

int cmd_epscheck(const Options& o, std::ostream& out) {
    const LoadedFramework fw = load_framework_file(o.common.input);
    const Configuration p = pin_moving_frame(fw.embedding);
    EpsilonOptions opts;
    if (!std::isnan(o.epsilon)) opts.epsilon = o.epsilon;
    opts.seed = o.common.seed;
    if (o.budget > 0) opts.path_budget = o.budget;
    const EpsilonResult res = epsilon_rigidity_check(fw.system, p, opts);
    json j = framework_summary(fw, o.common.input);
    j["epsilon"] = opts.epsilon;
    j["pinned_embedding"] = report::matrix_json(p.coords());
    j["epsilon_rigidity"] = report::epsilon_json(res);
    Emitter emit("epscheck", o.common, out);
    emit.report(j);
    if (o.common.svg) {
        Eigen::MatrixXd field = Eigen::MatrixXd::Zero(fw.graph.coordinate_count(), static_cast<Eigen::Index>(res.witnesses.size()));
        for (std::size_t k = 0; k < res.witnesses.size(); ++k)
            field.col(static_cast<Eigen::Index>(k)) = Configuration(res.witnesses[k]).flat() - p.flat();
        emit.svg(render_framework_svg(fw.graph, p, field));
    }
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const symbolic::IdealDocument doc = symbolic::load_ideal_document(o.common.input);
    const symbolic::IdealVerification v =
        symbolic::verify_ideal_document(doc, o.budget > 0 ? o.budget : 10000);
    Emitter emit("verify-ideals", o.common, out);
    emit.report(symbolic::verification_json(doc, v));
    return kExitOk;
}

int cmd_plot(const Options& o, std::ostream& out) {
    const LoadedFramework fw = load_framework_file(o.common.input);
    Eigen::MatrixXd field;
    if (o.with_flexes) field = decompose_nullspace(fw.graph, fw.embedding, o.common.tol).flexes;
    const std::string doc = render_framework_svg(fw.graph, fw.embedding, field);
    if (o.common.out_dir.empty()) {
        out << doc;
    } else {
        Emitter emit("plot", o.common, out);
        emit.svg(doc);
    }
    return kExitOk;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rigidity analysis for bar and tensegrity frameworks", "tensegrity"};
    app.require_subcommand(1);
    Options o;
    std::function<int(const Options&, std::ostream&)> handler;

    auto sub = [&](const std::string& name, const std::string& help, const std::string& input_help, auto fn) {
        CLI::App* s = app.add_subcommand(name, help);
        add_common(s, o.common, input_help);
        s->callback([&handler, fn] { handler = fn; });
        return s;
    };

    CLI::App* analyze = sub("analyze", "Ranks, coranks and infinitesimal rigidity", "Framework JSON", cmd_analyze);
    analyze->add_option("--trials", o.trials, "Random embeddings for the generic rank")->capture_default_str();
    sub("flexes", "Rigid motions and infinitesimal flexes", "Framework JSON", cmd_flexes);
    CLI::App* prestress = sub("prestress", "Self stresses and the prestress certificate", "Framework JSON", cmd_prestress);
    prestress->add_option("--partition", o.partition, "Named member-kind partition from the framework file");
    CLI::App* solve = sub("solve", "Total-degree homotopy solve", "Polynomial system JSON", cmd_solve);
    solve->add_option("--budget", o.budget, "Maximum number of paths");
    CLI::App* deform = sub("deform", "Real parameter homotopy along a hyperplane", "Framework JSON", cmd_deform);
    deform->add_option("--epsilon", o.epsilon, "Final hyperplane offset (default 0.01)");
    deform->add_option("--steps", o.steps, "Re-anchored stages")->capture_default_str()->check(CLI::PositiveNumber);
    deform->add_option("--direction", o.direction, "flex or random")->capture_default_str();
    CLI::App* eps = sub("epscheck", "Epsilon-local rigidity by critical points", "Framework JSON", cmd_epscheck);
    eps->add_option("--epsilon", o.epsilon, "Sphere radius (default 0.1)");
    eps->add_option("--budget", o.budget, "Maximum number of paths");
    CLI::App* verify = sub("verify-ideals", "Ideal containment in listed primes", "Ideal document JSON", cmd_verify);
    verify->add_option("--budget", o.budget, "Maximum number of S-pairs");
    CLI::App* plot = sub("plot", "SVG drawing of a framework", "Framework JSON", cmd_plot);
    plot->add_flag("--flexes", o.with_flexes, "Draw the infinitesimal flexes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        return handler(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"tensegrity"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_command(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace tensegrity::cli
