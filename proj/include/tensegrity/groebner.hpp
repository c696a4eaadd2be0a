#pragma once

#include "tensegrity/rational_poly.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tensegrity::symbolic {

class PairBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroebnerBasis {
    MonomialOrder order = MonomialOrder::degrevlex;
    /// Reduced and monic, sorted by leading monomial (descending).
    std::vector<RationalPoly> generators;
    std::uint64_t pairs_considered = 0;
    std::uint64_t pairs_skipped = 0;
};

struct GroebnerOptions {
    MonomialOrder order = MonomialOrder::degrevlex;
    std::uint64_t pair_budget = 10000;
};

/// Full reduction of f: no term of the result is divisible by a leading monomial of G.
/// Zero entries of G are ignored; an empty G returns f.
RationalPoly normal_form_reduce(const RationalPoly& f, const std::vector<RationalPoly>& g,
                                MonomialOrder order);

RationalPoly s_polynomial(const RationalPoly& f, const RationalPoly& g, MonomialOrder order);

/// Throws InputError when every generator is zero or the rings differ, PairBudgetError when
/// more than the budgeted number of S-pairs would be reduced.
GroebnerBasis buchberger(const std::vector<RationalPoly>& gens, const GroebnerOptions& opts = {});

/// Whether all S-polynomials of `g` reduce to zero modulo `g`.
bool is_groebner_basis(const std::vector<RationalPoly>& g, MonomialOrder order);

struct ContainmentReport {
    bool contained = true;
    std::vector<RationalPoly> remainders;  ///< one per generator of I
    GroebnerBasis basis;                   ///< of P
};

/// I subset P, decided by normal forms of the generators of I modulo a Groebner basis of P.
ContainmentReport verify_containment(const std::vector<RationalPoly>& ideal,
                                     const std::vector<RationalPoly>& prime,
                                     const GroebnerOptions& opts = {});

}  // namespace tensegrity::symbolic
