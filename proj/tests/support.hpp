#pragma once

#include "tensegrity/framework.hpp"

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cmath>
#include <string>
#include <vector>

namespace test_support {

inline std::string data_path(const std::string& name) { return std::string(TENSEGRITY_DATA_DIR) + "/" + name; }

inline tensegrity::LoadedFramework load(const std::string& name) {
    return tensegrity::load_framework_file(data_path(name));
}

/// Rank by exact Gaussian elimination over Q.
inline int exact_rank(std::vector<std::vector<mpq_class>> a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            const mpq_class f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

/// Max |a_i - s b_i| minimized over s = +-1.
inline double signed_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

/// |<a, b>| / (|a| |b|)
inline double abs_cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace test_support
