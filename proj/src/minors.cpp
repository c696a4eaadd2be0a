#include "tensegrity/minors.hpp"

#include "tensegrity/rigidity.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_map>

namespace tensegrity::symbolic {

PolyMatrix::PolyMatrix(int rows, int cols, int variables)
    : rows_(rows), cols_(cols), variables_(variables),
      entries_(static_cast<std::size_t>(rows * cols), RationalPoly(variables)) {
    if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
}

std::size_t PolyMatrix::index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw InputError("matrix index out of range");
    return static_cast<std::size_t>(r * cols_ + c);
}

std::vector<std::vector<mpq_class>> PolyMatrix::evaluate(const std::vector<mpq_class>& point) const {
    std::vector<std::vector<mpq_class>> out(static_cast<std::size_t>(rows_),
                                            std::vector<mpq_class>(static_cast<std::size_t>(cols_)));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = (*this)(r, c).evaluate(point);
    return out;
}

namespace {

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
    if (k > n) return out;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return out;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Laplace expansion along the chosen rows, memoized on the set of remaining columns. Every
// minor sharing a row set shares the sub-determinants of its trailing rows.
class LaplaceMemo {
public:
    LaplaceMemo(const PolyMatrix& m, std::vector<int> rows) : m_(m), rows_(std::move(rows)) {}

    RationalPoly det(std::uint64_t columns) {
        const int depth = static_cast<int>(rows_.size()) - std::popcount(columns);
        if (columns == 0) return RationalPoly::constant(m_.variable_count(), 1);
        if (auto it = memo_.find(columns); it != memo_.end()) return it->second;
        const int row = rows_[static_cast<std::size_t>(depth)];
        RationalPoly sum(m_.variable_count());
        int position = 0;
        for (int c = 0; c < m_.cols(); ++c) {
            if (!(columns >> c & 1U)) continue;
            const RationalPoly& entry = m_(row, c);
            if (!entry.is_zero()) {
                const RationalPoly term = entry * det(columns & ~(std::uint64_t{1} << c));
                if (position % 2 == 0) sum += term;
                else sum -= term;
            }
            ++position;
        }
        memo_.emplace(columns, sum);
        return sum;
    }

private:
    const PolyMatrix& m_;
    std::vector<int> rows_;
    std::unordered_map<std::uint64_t, RationalPoly> memo_;
};

}  // namespace

std::vector<Minor> symbolic_minors(const PolyMatrix& m, int r) {
    if (r < 1 || r > std::min(m.rows(), m.cols()))
        throw InputError("minor size " + std::to_string(r) + " out of range for a " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + " matrix");
    if (m.cols() > 64) throw InputError("symbolic minors support at most 64 columns");
    std::vector<Minor> out;
    const auto col_sets = subsets(m.cols(), r);
    for (const std::vector<int>& rows : subsets(m.rows(), r)) {
        LaplaceMemo memo(m, rows);
        for (const std::vector<int>& cols : col_sets) {
            std::uint64_t mask = 0;
            for (int c : cols) mask |= std::uint64_t{1} << c;
            out.push_back(Minor{rows, cols, memo.det(mask)});
        }
    }
    return out;
}

MinorCounts count_minors(const std::vector<Minor>& minors) {
    MinorCounts out;
    out.total = static_cast<int>(minors.size());
    std::set<std::map<Exponents, mpq_class>> distinct;
    std::set<std::map<Exponents, mpq_class>> up_to_sign;
    for (const Minor& mi : minors) {
        if (mi.zero()) continue;
        ++out.nonzero;
        distinct.insert(mi.value.terms());
        // Canonical sign: lex-largest term positive.
        const RationalPoly canon = mi.value.terms().rbegin()->second < 0 ? -mi.value : mi.value;
        up_to_sign.insert(canon.terms());
    }
    out.distinct = static_cast<int>(distinct.size());
    out.distinct_up_to_sign = static_cast<int>(up_to_sign.size());
    return out;
}

mpq_class determinant(std::vector<std::vector<mpq_class>> a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw InputError("determinant of a non-square matrix");
    if (n == 0) return 1;
    mpq_class sign = 1;
    mpq_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

PolyRing pinned_ring(int nodes, int dimension) {
    const bool wide = nodes > 9 || dimension > 9;
    std::vector<std::string> names;
    for (int idx : free_coordinate_indices(nodes, dimension)) {
        const int i = idx / dimension + 1;
        const int k = idx % dimension + 1;
        names.push_back("x" + std::to_string(i) + (wide ? "_" : "") + std::to_string(k));
    }
    return PolyRing(std::move(names));
}

namespace {

// Symbolic coordinate x_ik in the pinned frame: a ring variable or zero.
std::vector<RationalPoly> coordinate_polys(int nodes, int dimension, const PolyRing& ring) {
    const std::vector<int> free = free_coordinate_indices(nodes, dimension);
    if (static_cast<int>(free.size()) != ring.size())
        throw InputError("ring does not match the pinned frame of the framework");
    std::vector<RationalPoly> out(static_cast<std::size_t>(nodes * dimension), ring.zero());
    for (std::size_t v = 0; v < free.size(); ++v)
        out[static_cast<std::size_t>(free[v])] = RationalPoly::variable(ring.size(), static_cast<int>(v));
    return out;
}

}  // namespace

PolyMatrix pinned_rigidity_matrix(const FrameworkGraph& graph, const PolyRing& ring) {
    const int d = graph.dimension();
    const auto x = coordinate_polys(graph.node_count(), d, ring);
    PolyMatrix out(graph.member_count(), graph.coordinate_count(), ring.size());
    for (int r = 0; r < graph.member_count(); ++r) {
        const Member& m = graph.member(r);
        for (int k = 0; k < d; ++k) {
            const RationalPoly diff = x[static_cast<std::size_t>(m.i * d + k)] - x[static_cast<std::size_t>(m.j * d + k)];
            out(r, m.i * d + k) = diff;
            out(r, m.j * d + k) = -diff;
        }
    }
    return out;
}

std::vector<RationalPoly> pinned_member_polynomials(const MemberConstraintSystem& sys, const PolyRing& ring) {
    const FrameworkGraph& graph = sys.graph();
    const int d = graph.dimension();
    const auto x = coordinate_polys(graph.node_count(), d, ring);
    std::vector<RationalPoly> out;
    for (int r = 0; r < graph.member_count(); ++r) {
        const Member& m = graph.member(r);
        RationalPoly g = ring.constant(-mpq_class(sys.rest_sq_lengths()(r)));
        for (int k = 0; k < d; ++k) {
            const RationalPoly diff = x[static_cast<std::size_t>(m.i * d + k)] - x[static_cast<std::size_t>(m.j * d + k)];
            g += diff * diff;
        }
        out.push_back(std::move(g));
    }
    return out;
}

RationalPoly two_by_two_minor(const PolyRing& ring, const std::string& top, const std::string& bottom,
                              int a, int b) {
    const auto name = [](const std::string& row, int col) { return row + std::to_string(col); };
    return ring.variable(name(top, a)) * ring.variable(name(bottom, b)) -
           ring.variable(name(top, b)) * ring.variable(name(bottom, a));
}

}  // namespace tensegrity::symbolic
