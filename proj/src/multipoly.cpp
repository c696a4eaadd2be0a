#include "tensegrity/multipoly.hpp"

#include "tensegrity/framework.hpp"

#include <algorithm>
#include <numeric>

namespace tensegrity::continuation {

MultiPoly::MultiPoly(int variables) : variables_(variables) {
    if (variables < 0) throw InputError("negative variable count");
}

MultiPoly MultiPoly::constant(int variables, Complex c) {
    MultiPoly p(variables);
    p.add_term(Exponents(static_cast<std::size_t>(variables), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int variables, int index) {
    if (index < 0 || index >= variables) throw InputError("variable index out of range");
    MultiPoly p(variables);
    Exponents e(static_cast<std::size_t>(variables), 0);
    e[static_cast<std::size_t>(index)] = 1;
    p.add_term(e, 1.0);
    return p;
}

int MultiPoly::degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
    return deg;
}

void MultiPoly::add_term(const Exponents& exponents, Complex coeff) {
    if (static_cast<int>(exponents.size()) != variables_)
        throw InputError("exponent vector length does not match variable count");
    if (coeff == Complex(0.0)) return;
    auto [it, inserted] = terms_.try_emplace(exponents, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == Complex(0.0)) terms_.erase(it);
    }
}

MultiPoly MultiPoly::derivative(int var) const {
    MultiPoly out(variables_);
    for (const auto& [e, c] : terms_) {
        const int k = e[static_cast<std::size_t>(var)];
        if (k == 0) continue;
        Exponents de = e;
        de[static_cast<std::size_t>(var)] = k - 1;
        out.add_term(de, c * static_cast<double>(k));
    }
    return out;
}

MultiPoly MultiPoly::lifted(int variables) const {
    if (variables < variables_) throw InputError("cannot lift to fewer variables");
    MultiPoly out(variables);
    for (const auto& [e, c] : terms_) {
        Exponents le = e;
        le.resize(static_cast<std::size_t>(variables), 0);
        out.add_term(le, c);
    }
    return out;
}

MultiPoly MultiPoly::homogenized(int degree) const {
    if (degree < this->degree()) throw InputError("homogenizing degree below the polynomial degree");
    MultiPoly out(variables_ + 1);
    for (const auto& [e, c] : terms_) {
        Exponents he;
        he.reserve(e.size() + 1);
        he.push_back(degree - std::accumulate(e.begin(), e.end(), 0));
        he.insert(he.end(), e.begin(), e.end());
        out.add_term(he, c);
    }
    return out;
}

Complex MultiPoly::evaluate(const CVector& x) const {
    Complex sum = 0.0;
    for (const auto& [e, c] : terms_) {
        Complex t = c;
        for (std::size_t v = 0; v < e.size(); ++v)
            for (int k = 0; k < e[v]; ++k) t *= x(static_cast<Eigen::Index>(v));
        sum += t;
    }
    return sum;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    if (other.variables_ != variables_) throw InputError("variable count mismatch");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
    if (other.variables_ != variables_) throw InputError("variable count mismatch");
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(Complex c) {
    if (c == Complex(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.variables_ != b.variables_) throw InputError("variable count mismatch");
    MultiPoly out(a.variables_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            MultiPoly::Exponents e(ea.size());
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

PolySystem::PolySystem(std::vector<MultiPoly> equations) : equations_(std::move(equations)) {
    if (equations_.empty()) return;
    variables_ = equations_.front().variable_count();
    for (std::size_t i = 0; i < equations_.size(); ++i) {
        const MultiPoly& p = equations_[i];
        if (p.variable_count() != variables_)
            throw InputError("all equations of a system must share the variable count");
        for (const auto& [e, c] : p.terms()) {
            FlatTerm t{static_cast<int>(i), c, {}};
            for (std::size_t v = 0; v < e.size(); ++v) {
                if (e[v] > 0) {
                    t.powers.emplace_back(static_cast<int>(v), e[v]);
                    max_exponent_ = std::max(max_exponent_, e[v]);
                }
            }
            flat_.push_back(std::move(t));
        }
    }
}

std::vector<int> PolySystem::degrees() const {
    std::vector<int> out;
    for (const MultiPoly& p : equations_) out.push_back(p.degree());
    return out;
}

int PolySystem::max_degree() const {
    int d = 0;
    for (const MultiPoly& p : equations_) d = std::max(d, p.degree());
    return d;
}

namespace {

// powers(v, k) = x_v^k for k <= max_exponent
CMatrix power_table(const CVector& x, int max_exponent) {
    CMatrix pw(x.size(), max_exponent + 1);
    for (Eigen::Index v = 0; v < x.size(); ++v) {
        pw(v, 0) = 1.0;
        for (int k = 1; k <= max_exponent; ++k) pw(v, k) = pw(v, k - 1) * x(v);
    }
    return pw;
}

}  // namespace

CVector PolySystem::evaluate(const CVector& x) const {
    if (x.size() != variables_) throw InputError("point dimension does not match the system");
    const CMatrix pw = power_table(x, max_exponent_);
    CVector value = CVector::Zero(equation_count());
    for (const FlatTerm& t : flat_) {
        Complex m = t.coeff;
        for (const auto& [v, e] : t.powers) m *= pw(v, e);
        value(t.equation) += m;
    }
    return value;
}

void PolySystem::evaluate_with_jacobian(const CVector& x, CVector& value, CMatrix& jac) const {
    if (x.size() != variables_) throw InputError("point dimension does not match the system");
    const CMatrix pw = power_table(x, max_exponent_);
    value = CVector::Zero(equation_count());
    jac = CMatrix::Zero(equation_count(), variables_);
    for (const FlatTerm& t : flat_) {
        Complex m = t.coeff;
        for (const auto& [v, e] : t.powers) m *= pw(v, e);
        value(t.equation) += m;
        for (std::size_t a = 0; a < t.powers.size(); ++a) {
            const auto [va, ea] = t.powers[a];
            Complex d = t.coeff * static_cast<double>(ea) * pw(va, ea - 1);
            for (std::size_t b = 0; b < t.powers.size(); ++b)
                if (b != a) d *= pw(t.powers[b].first, t.powers[b].second);
            jac(t.equation, va) += d;
        }
    }
}

PolySystem combine(const Eigen::MatrixXd& weights, const PolySystem& system) {
    if (weights.cols() != system.equation_count())
        throw InputError("combination matrix does not match equation count");
    std::vector<MultiPoly> out;
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
        MultiPoly row(system.variable_count());
        for (int j = 0; j < system.equation_count(); ++j)
            if (weights(i, j) != 0.0) row += weights(i, j) * system[j];
        out.push_back(std::move(row));
    }
    return PolySystem(std::move(out));
}

}  // namespace tensegrity::continuation
