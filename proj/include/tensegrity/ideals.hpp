/**
 * @file ideals.hpp
 * @brief Ideal-containment documents for the verify-ideals command.
 *
 * Either an explicit ideal
 *
 *     {"name": "...", "variables": ["x11", ...], "ideal": ["x11*x22 - x12*x21", ...],
 *      "shorthand": {"top": "x1", "bottom": "x2"},
 *      "primes": [{"name": "P1", "generators": ["{12}", "x13", ...]}, ...]}
 *
 * where "{ab}" expands to the 2x2 minor on columns a and b of the rows named by "shorthand",
 * or an ideal built from a framework file (path relative to the document):
 *
 *     {"name": "...", "framework": "slingshot.json", "minor_size": 7, "primes": [...]}
 *
 * giving the pinned member polynomials plus every nonzero minor of the pinned rigidity matrix.
 */
#pragma once

#include "tensegrity/groebner.hpp"
#include "tensegrity/minors.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tensegrity::symbolic {

struct NamedIdeal {
    std::string name;
    std::vector<RationalPoly> generators;
};

struct IdealDocument {
    std::string name;
    PolyRing ring{{}};
    MonomialOrder order = MonomialOrder::degrevlex;
    std::vector<RationalPoly> ideal;
    std::vector<NamedIdeal> primes;
    int member_polynomials = 0;
    std::optional<MinorCounts> minors;
};

IdealDocument load_ideal_document(const std::string& path);
IdealDocument parse_ideal_document(const nlohmann::json& doc, const std::string& base_dir);

/// Rewrites "{ab}" tokens into explicit 2x2 minors of the rows `top` and `bottom`.
std::string expand_minor_shorthand(const std::string& text, const std::string& top, const std::string& bottom);

struct PrimeCheck {
    std::string name;
    bool contained = false;
    int nonzero_remainders = 0;
    std::string worst_remainder;  ///< "0" when contained
    int basis_size = 0;
};

struct IdealVerification {
    std::string name;
    bool all_contained = true;
    std::vector<PrimeCheck> primes;
};

IdealVerification verify_ideal_document(const IdealDocument& doc, std::uint64_t pair_budget = 10000);

nlohmann::json verification_json(const IdealDocument& doc, const IdealVerification& v);

}  // namespace tensegrity::symbolic
