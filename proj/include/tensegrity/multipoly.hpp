#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <vector>

namespace tensegrity::continuation {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Multivariate polynomial with complex coefficients in a fixed number of variables.
/// Terms are kept in a canonical map; zero coefficients are never stored.
class MultiPoly {
public:
    using Exponents = std::vector<int>;

    explicit MultiPoly(int variables = 0);

    static MultiPoly constant(int variables, Complex c);
    static MultiPoly variable(int variables, int index);

    int variable_count() const { return variables_; }
    int degree() const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Complex>& terms() const { return terms_; }

    void add_term(const Exponents& exponents, Complex coeff);

    MultiPoly derivative(int var) const;
    /// Same polynomial viewed in a ring with `variables` >= variable_count() variables.
    MultiPoly lifted(int variables) const;
    /// Homogenization to `degree` >= degree() with the new variable placed first.
    MultiPoly homogenized(int degree) const;

    Complex evaluate(const CVector& x) const;

    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly& operator-=(const MultiPoly& other);
    MultiPoly& operator*=(Complex c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, Complex c) { return a *= c; }
    friend MultiPoly operator*(Complex c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

private:
    int variables_;
    std::map<Exponents, Complex> terms_;
};

/// A list of polynomials over the same variables, with a flattened evaluator.
class PolySystem {
public:
    PolySystem() = default;
    explicit PolySystem(std::vector<MultiPoly> equations);

    int equation_count() const { return static_cast<int>(equations_.size()); }
    int variable_count() const { return variables_; }
    bool is_square() const { return equation_count() == variable_count(); }
    const MultiPoly& operator[](int i) const { return equations_[static_cast<std::size_t>(i)]; }
    const std::vector<MultiPoly>& equations() const { return equations_; }

    std::vector<int> degrees() const;
    int max_degree() const;

    CVector evaluate(const CVector& x) const;
    void evaluate_with_jacobian(const CVector& x, CVector& value, CMatrix& jac) const;

private:
    struct FlatTerm {
        int equation;
        Complex coeff;
        std::vector<std::pair<int, int>> powers;  // (variable, exponent > 0)
    };

    std::vector<MultiPoly> equations_;
    int variables_ = 0;
    int max_exponent_ = 0;
    std::vector<FlatTerm> flat_;
};

/// Linear combination sum_j weights(i, j) * system[j] for each row i.
PolySystem combine(const Eigen::MatrixXd& weights, const PolySystem& system);

}  // namespace tensegrity::continuation
