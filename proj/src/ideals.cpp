#include "tensegrity/ideals.hpp"

#include <filesystem>
#include <fstream>
#include <regex>

namespace tensegrity::symbolic {

using nlohmann::json;

std::string expand_minor_shorthand(const std::string& text, const std::string& top, const std::string& bottom) {
    static const std::regex token(R"(\{(\d)(\d)\})");
    std::string out;
    auto it = std::sregex_iterator(text.begin(), text.end(), token);
    std::size_t last = 0;
    for (; it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        out += text.substr(last, static_cast<std::size_t>(m.position()) - last);
        const std::string a = m[1].str();
        const std::string b = m[2].str();
        out += "(" + top + a + "*" + bottom + b + " - " + top + b + "*" + bottom + a + ")";
        last = static_cast<std::size_t>(m.position() + m.length());
    }
    out += text.substr(last);
    return out;
}

IdealDocument parse_ideal_document(const json& doc, const std::string& base_dir) {
    if (!doc.is_object()) throw InputError("ideal document must be a JSON object");
    IdealDocument out;
    out.name = doc.value("name", std::string("ideal"));
    if (doc.contains("order")) out.order = monomial_order_from_string(doc.at("order").get<std::string>());

    std::string top, bottom;
    if (doc.contains("shorthand")) {
        top = doc.at("shorthand").at("top").get<std::string>();
        bottom = doc.at("shorthand").at("bottom").get<std::string>();
    }
    auto parse = [&](const std::string& text) {
        return out.ring.parse(top.empty() ? text : expand_minor_shorthand(text, top, bottom));
    };

    if (doc.contains("framework")) {
        const std::filesystem::path fw_path = std::filesystem::path(base_dir) / doc.at("framework").get<std::string>();
        const LoadedFramework fw = load_framework_file(fw_path.string());
        out.ring = pinned_ring(fw.graph.node_count(), fw.graph.dimension());
        const std::vector<RationalPoly> members = pinned_member_polynomials(fw.system, out.ring);
        out.member_polynomials = static_cast<int>(members.size());
        out.ideal = members;
        const int r = doc.value("minor_size", fw.graph.member_count());
        const std::vector<Minor> minors = symbolic_minors(pinned_rigidity_matrix(fw.graph, out.ring), r);
        out.minors = count_minors(minors);
        for (const Minor& m : minors)
            if (!m.zero()) out.ideal.push_back(m.value);
    } else {
        if (!doc.contains("variables") || !doc.contains("ideal"))
            throw InputError("ideal document needs either 'framework' or 'variables' and 'ideal'");
        out.ring = PolyRing(doc.at("variables").get<std::vector<std::string>>());
        for (const auto& g : doc.at("ideal")) out.ideal.push_back(parse(g.get<std::string>()));
    }

    if (!doc.contains("primes")) throw InputError("ideal document has no 'primes'");
    for (const auto& p : doc.at("primes")) {
        NamedIdeal prime;
        prime.name = p.value("name", "P" + std::to_string(out.primes.size() + 1));
        for (const auto& g : p.at("generators")) prime.generators.push_back(parse(g.get<std::string>()));
        out.primes.push_back(std::move(prime));
    }
    return out;
}

IdealDocument load_ideal_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open ideal document '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("malformed ideal document '" + path + "': " + e.what());
    }
    try {
        return parse_ideal_document(doc, std::filesystem::path(path).parent_path().string());
    } catch (const json::exception& e) {
        throw InputError("malformed ideal document '" + path + "': " + e.what());
    }
}

IdealVerification verify_ideal_document(const IdealDocument& doc, std::uint64_t pair_budget) {
    IdealVerification out;
    out.name = doc.name;
    GroebnerOptions opts;
    opts.order = doc.order;
    opts.pair_budget = pair_budget;
    for (const NamedIdeal& prime : doc.primes) {
        const ContainmentReport rep = verify_containment(doc.ideal, prime.generators, opts);
        PrimeCheck check;
        check.name = prime.name;
        check.contained = rep.contained;
        check.basis_size = static_cast<int>(rep.basis.generators.size());
        const RationalPoly* worst = nullptr;
        for (const RationalPoly& r : rep.remainders) {
            if (r.is_zero()) continue;
            ++check.nonzero_remainders;
            if (!worst || r.term_count() > worst->term_count()) worst = &r;
        }
        check.worst_remainder = worst ? doc.ring.format(*worst, doc.order) : "0";
        out.all_contained = out.all_contained && check.contained;
        out.primes.push_back(std::move(check));
    }
    return out;
}

json verification_json(const IdealDocument& doc, const IdealVerification& v) {
    json primes = json::array();
    for (const PrimeCheck& p : v.primes)
        primes.push_back(json{{"name", p.name},
                              {"contained", p.contained},
                              {"basis_size", p.basis_size},
                              {"nonzero_remainders", p.nonzero_remainders},
                              {"worst_remainder", p.worst_remainder}});
    json out{{"name", v.name},
             {"order", std::string(to_string(doc.order))},
             {"variables", doc.ring.names()},
             {"ideal_size", doc.ideal.size()},
             {"all_contained", v.all_contained},
             {"primes", primes}};
    if (doc.minors) {
        out["member_polynomials"] = doc.member_polynomials;
        out["minors"] = json{{"total", doc.minors->total},
                             {"nonzero", doc.minors->nonzero},
                             {"distinct", doc.minors->distinct},
                             {"distinct_up_to_sign", doc.minors->distinct_up_to_sign}};
    }
    return out;
}

}  // namespace tensegrity::symbolic
