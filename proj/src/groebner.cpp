#include "tensegrity/groebner.hpp"

#include "tensegrity/framework.hpp"

#include <algorithm>
#include <deque>

namespace tensegrity::symbolic {

namespace {

Exponents lcm(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::max(a[k], b[k]);
    return out;
}

Exponents quotient(const Exponents& num, const Exponents& den) {
    Exponents out(num.size());
    for (std::size_t k = 0; k < num.size(); ++k) out[k] = num[k] - den[k];
    return out;
}

bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > 0 && b[k] > 0) return false;
    return true;
}

struct Leading {
    Exponents monomial;
    mpq_class coeff;
};

}  // namespace

RationalPoly normal_form_reduce(const RationalPoly& f, const std::vector<RationalPoly>& g,
                                MonomialOrder order) {
    std::vector<const RationalPoly*> divisors;
    std::vector<Leading> leads;
    for (const RationalPoly& p : g) {
        if (p.variable_count() != f.variable_count()) throw InputError("polynomials live in different rings");
        if (p.is_zero()) continue;
        divisors.push_back(&p);
        leads.push_back({p.leading_monomial(order), p.leading_coefficient(order)});
    }
    RationalPoly rest = f;
    RationalPoly remainder(f.variable_count());
    while (!rest.is_zero()) {
        const Exponents lm = rest.leading_monomial(order);
        const mpq_class lc = rest.leading_coefficient(order);
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (!divides(leads[i].monomial, lm)) continue;
            rest -= divisors[i]->times_term(quotient(lm, leads[i].monomial), lc / leads[i].coeff);
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.add_term(lm, lc);
            rest.add_term(lm, -lc);
        }
    }
    return remainder;
}

RationalPoly s_polynomial(const RationalPoly& f, const RationalPoly& g, MonomialOrder order) {
    const Exponents& lf = f.leading_monomial(order);
    const Exponents& lg = g.leading_monomial(order);
    const Exponents l = lcm(lf, lg);
    return f.times_term(quotient(l, lf), 1 / f.leading_coefficient(order)) -
           g.times_term(quotient(l, lg), 1 / g.leading_coefficient(order));
}

GroebnerBasis buchberger(const std::vector<RationalPoly>& gens, const GroebnerOptions& opts) {
    const MonomialOrder order = opts.order;
    std::vector<RationalPoly> basis;
    for (const RationalPoly& p : gens) {
        if (!basis.empty() && p.variable_count() != basis.front().variable_count())
            throw InputError("generators live in different rings");
        if (!p.is_zero()) basis.push_back(p.monic(order));
    }
    if (basis.empty()) throw InputError("buchberger needs at least one nonzero generator");

    GroebnerBasis out;
    out.order = order;
    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 1; j < basis.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        const auto [i, j] = pairs.front();
        pairs.pop_front();
        if (coprime(basis[i].leading_monomial(order), basis[j].leading_monomial(order))) {
            ++out.pairs_skipped;
            continue;
        }
        if (++out.pairs_considered > opts.pair_budget)
            throw PairBudgetError("buchberger exceeded the budget of " + std::to_string(opts.pair_budget) +
                                  " S-pairs");
        RationalPoly r = normal_form_reduce(s_polynomial(basis[i], basis[j], order), basis, order);
        if (r.is_zero()) continue;
        basis.push_back(r.monic(order));
        const std::size_t k = basis.size() - 1;
        for (std::size_t a = 0; a < k; ++a) pairs.emplace_back(a, k);
    }

    // Minimize: drop generators whose leading monomial is divisible by another's.
    std::vector<RationalPoly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Exponents& li = basis[i].leading_monomial(order);
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const Exponents& lj = basis[j].leading_monomial(order);
            // Equal leading monomials: keep the first occurrence only.
            if (divides(lj, li) && (lj != li || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // Interreduce the tails.
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<RationalPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        minimal[i] = normal_form_reduce(minimal[i], others, order).monic(order);
    }
    std::sort(minimal.begin(), minimal.end(), [order](const RationalPoly& a, const RationalPoly& b) {
        return monomial_less(b.leading_monomial(order), a.leading_monomial(order), order);
    });
    out.generators = std::move(minimal);
    return out;
}

bool is_groebner_basis(const std::vector<RationalPoly>& g, MonomialOrder order) {
    for (std::size_t j = 0; j < g.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (g[i].is_zero() || g[j].is_zero()) continue;
            if (!normal_form_reduce(s_polynomial(g[i], g[j], order), g, order).is_zero()) return false;
        }
    }
    return true;
}

ContainmentReport verify_containment(const std::vector<RationalPoly>& ideal,
                                     const std::vector<RationalPoly>& prime, const GroebnerOptions& opts) {
    ContainmentReport out;
    out.basis = buchberger(prime, opts);
    for (const RationalPoly& f : ideal) {
        out.remainders.push_back(normal_form_reduce(f, out.basis.generators, opts.order));
        if (!out.remainders.back().is_zero()) out.contained = false;
    }
    return out;
}

}  // namespace tensegrity::symbolic
