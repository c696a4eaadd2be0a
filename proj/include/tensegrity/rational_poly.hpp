/**
 * @file rational_poly.hpp
 * @brief Exact multivariate polynomials over Q and a named-variable ring for text I/O.
 */
#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tensegrity::symbolic {

enum class MonomialOrder { lex, degrevlex };

std::string_view to_string(MonomialOrder order);
MonomialOrder monomial_order_from_string(std::string_view name);

using Exponents = std::vector<int>;

/// True when a < b in the given order (variable 0 is the largest).
bool monomial_less(const Exponents& a, const Exponents& b, MonomialOrder order);
bool divides(const Exponents& a, const Exponents& b);
int total_degree(const Exponents& e);

class RationalPoly {
public:
    explicit RationalPoly(int variables = 0);

    static RationalPoly constant(int variables, const mpq_class& c);
    static RationalPoly variable(int variables, int index);
    static RationalPoly monomial(const Exponents& e, const mpq_class& c);

    int variable_count() const { return variables_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    int total_degree() const;
    /// Terms keyed by exponent vector; iteration order is lex ascending.
    const std::map<Exponents, mpq_class>& terms() const { return terms_; }

    void add_term(const Exponents& e, const mpq_class& c);

    /// Leading exponent and coefficient. Throws InputError on the zero polynomial.
    const Exponents& leading_monomial(MonomialOrder order) const;
    const mpq_class& leading_coefficient(MonomialOrder order) const;
    RationalPoly monic(MonomialOrder order) const;

    mpq_class evaluate(const std::vector<mpq_class>& point) const;

    RationalPoly& operator+=(const RationalPoly& other);
    RationalPoly& operator-=(const RationalPoly& other);
    RationalPoly& operator*=(const mpq_class& c);
    RationalPoly operator-() const;

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(RationalPoly a, const mpq_class& c) { return a *= c; }
    friend RationalPoly operator*(const mpq_class& c, RationalPoly a) { return a *= c; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend bool operator==(const RationalPoly& a, const RationalPoly& b);

    /// this * c * x^e, the workhorse of division.
    RationalPoly times_term(const Exponents& e, const mpq_class& c) const;
    RationalPoly pow(int k) const;

private:
    void require_compatible(const RationalPoly& other) const;

    int variables_;
    std::map<Exponents, mpq_class> terms_;
};

/// Ordered variable names with a parser and printer for plain ASCII polynomials such as
/// "x21^2*x32 - 3/4*x41" or "(x21 - x31)^2 + x32^2 - 2".
class PolyRing {
public:
    explicit PolyRing(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    /// -1 when absent.
    int index_of(std::string_view name) const;

    RationalPoly zero() const { return RationalPoly(size()); }
    RationalPoly variable(std::string_view name) const;
    RationalPoly constant(const mpq_class& c) const { return RationalPoly::constant(size(), c); }

    /// Throws InputError on syntax errors or unknown variables.
    RationalPoly parse(std::string_view text) const;
    /// Terms in descending `order`.
    std::string format(const RationalPoly& p, MonomialOrder order = MonomialOrder::degrevlex) const;

private:
    std::vector<std::string> names_;
};

/// Exact rational for a decimal or fraction literal ("3", "-3/4", "0.125", "1e-3").
mpq_class parse_rational(std::string_view text);

}  // namespace tensegrity::symbolic
