// Reference 3-prism values (3 significant digits where rounded).
#pragma once

#include <Eigen/Dense>

namespace reference {

inline Eigen::MatrixXd pinned_prism() {
    Eigen::MatrixXd p(6, 3);
    p << 0.0, 0.0, 0.0,
         1.7320508075688772, 0.0, 0.0,
         0.8660254037844388, -1.5, 0.0,
         1.3660254037844386, -1.3660254037844386, 3.0,
         -0.1339745962155613, -0.5, 3.0,
         1.3660254037844388, 0.3660254037844386, 3.0;
    return p;
}

inline Eigen::VectorXd prism_flex() {
    Eigen::VectorXd v(18);
    v << 0.000, 1.58, 0.263, -1.37, -0.789, 0.263, 1.37, -0.789, 0.263,
         -0.789, 1.37, -0.263, -0.789, -1.37, -0.263, 1.58, 0.000, -0.263;
    return v;
}

/// Member order 12 13 14 15 23 25 26 34 36 45 46 56.
inline Eigen::VectorXd prism_stress() {
    Eigen::VectorXd w(12);
    w << 1, 1, -1.73, 1.73, 1, -1.73, 1.73, 1.73, -1.73, 1, 1, 1;
    return w;
}

inline constexpr double prism_energy = 89.56922;

}  // namespace reference
