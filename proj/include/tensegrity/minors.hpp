/**
 * @file minors.hpp
 * @brief Polynomial matrices, their minors, and symbolic versions of the member system.
 */
#pragma once

#include "tensegrity/framework.hpp"
#include "tensegrity/rational_poly.hpp"

#include <vector>

namespace tensegrity::symbolic {

class PolyMatrix {
public:
    PolyMatrix(int rows, int cols, int variables);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int variable_count() const { return variables_; }

    RationalPoly& operator()(int r, int c) { return entries_[index(r, c)]; }
    const RationalPoly& operator()(int r, int c) const { return entries_[index(r, c)]; }

    /// Entry-wise evaluation at a rational point.
    std::vector<std::vector<mpq_class>> evaluate(const std::vector<mpq_class>& point) const;

private:
    std::size_t index(int r, int c) const;

    int rows_;
    int cols_;
    int variables_;
    std::vector<RationalPoly> entries_;
};

struct Minor {
    std::vector<int> rows;  ///< ascending, 0-based
    std::vector<int> cols;  ///< ascending, 0-based
    RationalPoly value;
    bool zero() const { return value.is_zero(); }
};

/// Every r x r minor, row subsets in lexicographic order and column subsets lexicographic
/// within each. Zero minors are kept. Throws InputError unless 1 <= r <= min(rows, cols).
std::vector<Minor> symbolic_minors(const PolyMatrix& m, int r);

/// Number of distinct polynomials among the nonzero minors, and the same up to sign.
struct MinorCounts {
    int total = 0;
    int nonzero = 0;
    int distinct = 0;
    int distinct_up_to_sign = 0;
};
MinorCounts count_minors(const std::vector<Minor>& minors);

/// Exact determinant by fraction-free (Bareiss) elimination over Q.
mpq_class determinant(std::vector<std::vector<mpq_class>> a);

/// Variables of the pinned frame: x{i}{k} (1-based) for each free coordinate, with an
/// underscore separator x{i}_{k} once n or d exceeds 9.
PolyRing pinned_ring(int nodes, int dimension);

/// Half the Jacobian of the member polynomials, m x (n d), in the pinned variables; pinned
/// coordinates are replaced by zero but their columns are kept.
PolyMatrix pinned_rigidity_matrix(const FrameworkGraph& graph, const PolyRing& ring);

/// g_ij in the pinned variables, with each squared rest length converted exactly from double.
std::vector<RationalPoly> pinned_member_polynomials(const MemberConstraintSystem& sys, const PolyRing& ring);

/// x_{top,a} x_{bottom,b} - x_{top,b} x_{bottom,a}, the 2x2 minor on columns a and b.
RationalPoly two_by_two_minor(const PolyRing& ring, const std::string& top, const std::string& bottom,
                              int a, int b);

}  // namespace tensegrity::symbolic
