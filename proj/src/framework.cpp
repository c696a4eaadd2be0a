#include "tensegrity/framework.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace tensegrity {

using nlohmann::json;

std::string_view to_string(MemberKind kind) {
    switch (kind) {
        case MemberKind::bar: return "bar";
        case MemberKind::cable: return "cable";
        case MemberKind::strut: return "strut";
    }
    return "bar";
}

MemberKind member_kind_from_string(std::string_view name) {
    if (name == "bar") return MemberKind::bar;
    if (name == "cable") return MemberKind::cable;
    if (name == "strut") return MemberKind::strut;
    throw InputError("unknown member kind '" + std::string(name) + "'");
}

int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return static_cast<int>(r);
}

FrameworkGraph::FrameworkGraph(int nodes, int dimension, std::vector<Member> members)
    : nodes_(nodes), dimension_(dimension), members_(std::move(members)) {
    if (nodes_ <= 0) throw InputError("node count must be positive");
    if (dimension_ <= 0) throw InputError("dimension must be positive");
    std::set<std::pair<int, int>> seen;
    for (const Member& m : members_) {
        if (m.i < 0 || m.j < 0 || m.i >= nodes_ || m.j >= nodes_)
            throw InputError("member (" + std::to_string(m.i + 1) + ", " + std::to_string(m.j + 1) +
                             ") references a node out of range");
        if (m.i >= m.j)
            throw InputError("member (" + std::to_string(m.i + 1) + ", " + std::to_string(m.j + 1) +
                             ") must satisfy i < j");
        if (!seen.emplace(m.i, m.j).second)
            throw InputError("duplicate member (" + std::to_string(m.i + 1) + ", " +
                             std::to_string(m.j + 1) + ")");
    }
}

int FrameworkGraph::find_member(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (std::size_t k = 0; k < members_.size(); ++k)
        if (members_[k].i == i && members_[k].j == j) return static_cast<int>(k);
    return -1;
}

FrameworkGraph FrameworkGraph::with_kinds(std::span<const MemberKind> kinds) const {
    if (kinds.size() != members_.size())
        throw InputError("partition has " + std::to_string(kinds.size()) + " kinds for " +
                         std::to_string(members_.size()) + " members");
    std::vector<Member> out = members_;
    for (std::size_t k = 0; k < out.size(); ++k) out[k].kind = kinds[k];
    return FrameworkGraph(nodes_, dimension_, std::move(out));
}

Configuration::Configuration(Eigen::MatrixXd coords) : coords_(std::move(coords)) {
    if (coords_.rows() == 0 || coords_.cols() == 0) throw InputError("empty configuration");
    if (!coords_.allFinite()) throw InputError("configuration has a non-finite coordinate");
}

Configuration Configuration::from_flat(const Eigen::VectorXd& flat, int dimension) {
    if (dimension <= 0 || flat.size() % dimension != 0)
        throw InputError("flat vector length is not a multiple of the dimension");
    const Eigen::Index n = flat.size() / dimension;
    Eigen::MatrixXd c(n, dimension);
    for (Eigen::Index i = 0; i < n; ++i)
        for (int k = 0; k < dimension; ++k) c(i, k) = flat(i * dimension + k);
    return Configuration(std::move(c));
}

Eigen::VectorXd Configuration::flat() const {
    Eigen::VectorXd v(coords_.size());
    const Eigen::Index d = coords_.cols();
    for (Eigen::Index i = 0; i < coords_.rows(); ++i)
        for (Eigen::Index k = 0; k < d; ++k) v(i * d + k) = coords_(i, k);
    return v;
}

void require_shape(const FrameworkGraph& graph, const Configuration& x) {
    if (x.node_count() != graph.node_count() || x.dimension() != graph.dimension())
        throw InputError("configuration shape " + std::to_string(x.node_count()) + "x" +
                         std::to_string(x.dimension()) + " does not match framework " +
                         std::to_string(graph.node_count()) + "x" +
                         std::to_string(graph.dimension()));
}

Eigen::VectorXd squared_lengths(const FrameworkGraph& graph, const Configuration& x) {
    require_shape(graph, x);
    Eigen::VectorXd out(graph.member_count());
    const auto& c = x.coords();
    for (int k = 0; k < graph.member_count(); ++k) {
        const Member& m = graph.member(k);
        out(k) = (c.row(m.i) - c.row(m.j)).squaredNorm();
    }
    return out;
}

MemberConstraintSystem::MemberConstraintSystem(FrameworkGraph graph, Eigen::VectorXd rest_sq_lengths)
    : graph_(std::move(graph)), rest_sq_lengths_(std::move(rest_sq_lengths)) {
    if (rest_sq_lengths_.size() != graph_.member_count())
        throw InputError("rest length vector does not match member count");
    for (Eigen::Index k = 0; k < rest_sq_lengths_.size(); ++k)
        if (!(rest_sq_lengths_(k) > 0.0) || !std::isfinite(rest_sq_lengths_(k)))
            throw InputError("rest squared length of member " + std::to_string(k + 1) +
                             " must be positive and finite");
}

MemberConstraintSystem MemberConstraintSystem::from_embedding(FrameworkGraph graph,
                                                              const Configuration& p) {
    Eigen::VectorXd l2 = squared_lengths(graph, p);
    return MemberConstraintSystem(std::move(graph), std::move(l2));
}

bool MemberEvaluation::all_feasible() const {
    for (bool f : feasible)
        if (!f) return false;
    return true;
}

MemberEvaluation evaluate_members(const MemberConstraintSystem& sys, const Configuration& x,
                                  double tol_feas) {
    const FrameworkGraph& graph = sys.graph();
    MemberEvaluation out;
    out.residuals = squared_lengths(graph, x) - sys.rest_sq_lengths();
    out.feasible.resize(static_cast<std::size_t>(graph.member_count()));
    for (int k = 0; k < graph.member_count(); ++k) {
        const double r = out.residuals(k);
        bool ok = false;
        switch (graph.member(k).kind) {
            case MemberKind::bar: ok = std::abs(r) <= tol_feas; break;
            case MemberKind::cable: ok = r <= tol_feas; break;
            case MemberKind::strut: ok = r >= -tol_feas; break;
        }
        out.feasible[static_cast<std::size_t>(k)] = ok;
    }
    return out;
}

namespace {

int read_int(const json& v, const char* what) {
    if (!v.is_number_integer()) throw InputError(std::string("field '") + what + "' must be an integer");
    return v.get<int>();
}

double read_number(const json& v, const char* what) {
    if (!v.is_number()) throw InputError(std::string("field '") + what + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InputError(std::string("field '") + what + "' is not finite");
    return x;
}

}  // namespace

LoadedFramework load_framework(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed framework document: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("framework document must be a JSON object");
    for (const char* key : {"dimension", "nodes", "members"})
        if (!doc.contains(key)) throw InputError(std::string("framework document lacks '") + key + "'");

    const int d = read_int(doc["dimension"], "dimension");
    if (d <= 0) throw InputError("dimension must be positive");
    const json& nodes = doc["nodes"];
    if (!nodes.is_array() || nodes.empty()) throw InputError("'nodes' must be a non-empty array");
    const int n = static_cast<int>(nodes.size());
    Eigen::MatrixXd coords(n, d);
    for (int i = 0; i < n; ++i) {
        const json& row = nodes[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw InputError("node " + std::to_string(i + 1) + " must have " + std::to_string(d) +
                             " coordinates");
        for (int k = 0; k < d; ++k) coords(i, k) = read_number(row[static_cast<std::size_t>(k)], "nodes");
    }

    const json& mem = doc["members"];
    if (!mem.is_array()) throw InputError("'members' must be an array");
    std::vector<Member> members;
    std::vector<std::pair<std::size_t, double>> given_l2;
    for (const json& e : mem) {
        if (!e.is_object() || !e.contains("i") || !e.contains("j"))
            throw InputError("each member needs 'i' and 'j'");
        Member m;
        m.i = read_int(e["i"], "i") - 1;
        m.j = read_int(e["j"], "j") - 1;
        if (m.i > m.j) std::swap(m.i, m.j);
        m.kind = e.contains("kind") ? member_kind_from_string(e["kind"].get<std::string>())
                                    : MemberKind::bar;
        members.push_back(m);
        if (e.contains("rest_sq_length"))
            given_l2.emplace_back(members.size() - 1, read_number(e["rest_sq_length"], "rest_sq_length"));
    }

    FrameworkGraph graph(n, d, std::move(members));
    Configuration p(std::move(coords));
    Eigen::VectorXd l2 = squared_lengths(graph, p);
    for (const auto& [k, value] : given_l2) l2(static_cast<Eigen::Index>(k)) = value;
    MemberConstraintSystem sys(graph, std::move(l2));

    std::map<std::string, std::vector<MemberKind>> partitions;
    if (doc.contains("partitions")) {
        const json& parts = doc["partitions"];
        if (!parts.is_object()) throw InputError("'partitions' must be an object");
        for (const auto& [name, kinds] : parts.items()) {
            if (!kinds.is_array() || static_cast<int>(kinds.size()) != graph.member_count())
                throw InputError("partition '" + name + "' must list one kind per member");
            std::vector<MemberKind> ks;
            for (const json& k : kinds) ks.push_back(member_kind_from_string(k.get<std::string>()));
            partitions.emplace(name, std::move(ks));
        }
    }
    return LoadedFramework{std::move(graph), std::move(p), std::move(sys), std::move(partitions)};
}

LoadedFramework load_framework(std::string_view json_text) {
    std::istringstream in{std::string(json_text)};
    return load_framework(in);
}

LoadedFramework load_framework_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open framework file '" + path + "'");
    return load_framework(in);
}

std::string framework_to_json(const FrameworkGraph& graph, const Configuration& p,
                              const Eigen::VectorXd* rest_sq_lengths) {
    require_shape(graph, p);
    json doc;
    doc["dimension"] = graph.dimension();
    json nodes = json::array();
    for (int i = 0; i < p.node_count(); ++i) {
        json row = json::array();
        for (int k = 0; k < p.dimension(); ++k) row.push_back(p.coords()(i, k));
        nodes.push_back(row);
    }
    doc["nodes"] = nodes;
    json mem = json::array();
    for (int k = 0; k < graph.member_count(); ++k) {
        const Member& m = graph.member(k);
        json e{{"i", m.i + 1}, {"j", m.j + 1}, {"kind", std::string(to_string(m.kind))}};
        if (rest_sq_lengths) e["rest_sq_length"] = (*rest_sq_lengths)(k);
        mem.push_back(e);
    }
    doc["members"] = mem;
    return doc.dump(2);
}

}  // namespace tensegrity
