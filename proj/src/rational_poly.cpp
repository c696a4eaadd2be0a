#include "tensegrity/rational_poly.hpp"

#include "tensegrity/framework.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace tensegrity::symbolic {

std::string_view to_string(MonomialOrder order) {
    return order == MonomialOrder::lex ? "lex" : "degrevlex";
}

MonomialOrder monomial_order_from_string(std::string_view name) {
    if (name == "lex") return MonomialOrder::lex;
    if (name == "degrevlex" || name == "grevlex") return MonomialOrder::degrevlex;
    throw InputError("unknown monomial order '" + std::string(name) + "'");
}

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool monomial_less(const Exponents& a, const Exponents& b, MonomialOrder order) {
    if (order == MonomialOrder::lex) return a < b;
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    // Equal degree: a > b when the last nonzero entry of a - b is negative.
    for (std::size_t k = a.size(); k-- > 0;) {
        if (a[k] != b[k]) return a[k] > b[k];
    }
    return false;
}

bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

RationalPoly::RationalPoly(int variables) : variables_(variables) {
    if (variables < 0) throw InputError("negative variable count");
}

RationalPoly RationalPoly::constant(int variables, const mpq_class& c) {
    RationalPoly p(variables);
    p.add_term(Exponents(static_cast<std::size_t>(variables), 0), c);
    return p;
}

RationalPoly RationalPoly::variable(int variables, int index) {
    if (index < 0 || index >= variables) throw InputError("variable index out of range");
    Exponents e(static_cast<std::size_t>(variables), 0);
    e[static_cast<std::size_t>(index)] = 1;
    return monomial(e, 1);
}

RationalPoly RationalPoly::monomial(const Exponents& e, const mpq_class& c) {
    RationalPoly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

int RationalPoly::total_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) deg = std::max(deg, symbolic::total_degree(e));
    return deg;
}

void RationalPoly::add_term(const Exponents& e, const mpq_class& c) {
    if (static_cast<int>(e.size()) != variables_)
        throw InputError("exponent vector length does not match variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

const Exponents& RationalPoly::leading_monomial(MonomialOrder order) const {
    if (terms_.empty()) throw InputError("zero polynomial has no leading term");
    if (order == MonomialOrder::lex) return terms_.rbegin()->first;
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (monomial_less(best->first, it->first, order)) best = it;
    return best->first;
}

const mpq_class& RationalPoly::leading_coefficient(MonomialOrder order) const {
    return terms_.at(leading_monomial(order));
}

RationalPoly RationalPoly::monic(MonomialOrder order) const {
    if (is_zero()) return *this;
    const mpq_class inv = 1 / leading_coefficient(order);
    return *this * inv;
}

mpq_class RationalPoly::evaluate(const std::vector<mpq_class>& point) const {
    if (static_cast<int>(point.size()) != variables_) throw InputError("point has the wrong dimension");
    mpq_class sum = 0;
    for (const auto& [e, c] : terms_) {
        mpq_class t = c;
        for (std::size_t v = 0; v < e.size(); ++v)
            for (int k = 0; k < e[v]; ++k) t *= point[v];
        sum += t;
    }
    return sum;
}

void RationalPoly::require_compatible(const RationalPoly& other) const {
    if (other.variables_ != variables_) throw InputError("polynomials live in different rings");
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& other) {
    require_compatible(other);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& other) {
    require_compatible(other);
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

RationalPoly& RationalPoly::operator*=(const mpq_class& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
    return *this;
}

RationalPoly RationalPoly::operator-() const {
    RationalPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    a.require_compatible(b);
    RationalPoly out(a.variables_);
    Exponents e(static_cast<std::size_t>(a.variables_));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
}

RationalPoly RationalPoly::times_term(const Exponents& e, const mpq_class& c) const {
    if (static_cast<int>(e.size()) != variables_) throw InputError("exponent vector length mismatch");
    RationalPoly out(variables_);
    if (c == 0) return out;
    Exponents shifted(e.size());
    for (const auto& [et, ct] : terms_) {
        for (std::size_t v = 0; v < e.size(); ++v) shifted[v] = et[v] + e[v];
        out.terms_.emplace_hint(out.terms_.end(), shifted, ct * c);
    }
    return out;
}

RationalPoly RationalPoly::pow(int k) const {
    if (k < 0) throw InputError("negative exponent");
    RationalPoly out = constant(variables_, 1);
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
}

mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw InputError("empty number");
    if (s.find('/') != std::string::npos) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw InputError("bad rational '" + s + "'");
        if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    }
    // Decimal with optional exponent, converted exactly.
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    int scale = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'); ++pos) {
        if (s[pos] == '.') {
            if (seen_point) throw InputError("bad number '" + s + "'");
            seen_point = true;
            continue;
        }
        any_digit = true;
        digits.push_back(s[pos]);
        if (seen_point) --scale;
    }
    if (!any_digit) throw InputError("bad number '" + s + "'");
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') throw InputError("bad number '" + s + "'");
        try {
            std::size_t used = 0;
            scale += std::stoi(s.substr(pos + 1), &used);
            if (pos + 1 + used != s.size()) throw InputError("bad number '" + s + "'");
        } catch (const std::logic_error&) {
            throw InputError("bad number '" + s + "'");
        }
    }
    mpz_class num(digits, 10);
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(scale)));
    mpq_class q = scale >= 0 ? mpq_class(num * ten_pow) : mpq_class(num, ten_pow);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

PolyRing::PolyRing(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        const std::string& n = names_[i];
        if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
            throw InputError("invalid variable name '" + n + "'");
        for (char ch : n)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
                throw InputError("invalid variable name '" + n + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (names_[j] == n) throw InputError("duplicate variable name '" + n + "'");
    }
}

int PolyRing::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

RationalPoly PolyRing::variable(std::string_view name) const {
    const int idx = index_of(name);
    if (idx < 0) throw InputError("unknown variable '" + std::string(name) + "'");
    return RationalPoly::variable(size(), idx);
}

namespace {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := power ('*' power)*
// power  := atom ['^' integer]
// atom   := number | name | '(' expr ')'
class Parser {
public:
    Parser(const PolyRing& ring, std::string_view text) : ring_(ring), text_(text) {}

    RationalPoly run() {
        RationalPoly p = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("cannot parse polynomial '" + std::string(text_) + "': " + what);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalPoly expr() {
        RationalPoly out = ring_.zero();
        bool negative = false;
        if (accept('-')) negative = true;
        else accept('+');
        RationalPoly t = term();
        out += negative ? -t : t;
        while (true) {
            if (accept('+')) out += term();
            else if (accept('-')) out -= term();
            else break;
        }
        return out;
    }

    RationalPoly term() {
        RationalPoly out = power();
        while (accept('*')) out = out * power();
        return out;
    }

    RationalPoly power() {
        RationalPoly base = atom();
        if (accept('^')) {
            skip();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("exponent must be a non-negative integer");
            return base.pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
        }
        return base;
    }

    RationalPoly atom() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RationalPoly inner = expr();
            if (!accept(')')) fail("missing ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
            return ring_.constant(parse_rational(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (ring_.index_of(name) < 0) fail("unknown variable '" + std::string(name) + "'");
            return ring_.variable(name);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const PolyRing& ring_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalPoly PolyRing::parse(std::string_view text) const { return Parser(*this, text).run(); }

std::string PolyRing::format(const RationalPoly& p, MonomialOrder order) const {
    if (p.variable_count() != size()) throw InputError("polynomial does not belong to this ring");
    if (p.is_zero()) return "0";
    std::vector<std::pair<Exponents, mpq_class>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(),
              [order](const auto& a, const auto& b) { return monomial_less(b.first, a.first, order); });
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        const bool negative = c < 0;
        const mpq_class mag = abs(c);
        if (first) out << (negative ? "-" : "");
        else out << (negative ? " - " : " + ");
        first = false;
        std::vector<std::string> factors;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            factors.push_back(e[v] == 1 ? names_[v] : names_[v] + "^" + std::to_string(e[v]));
        }
        if (factors.empty() || mag != 1) factors.insert(factors.begin(), mag.get_str());
        for (std::size_t k = 0; k < factors.size(); ++k) out << (k ? "*" : "") << factors[k];
    }
    return out.str();
}

}  // namespace tensegrity::symbolic
