#pragma once

#include "tensegrity/framework.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace tensegrity {

struct RenderSpec {
    /// 2 x d linear map to the drawing plane. Empty selects the default: x -> (x, 0) for d = 1,
    /// identity for d = 2, isometric view along (1,1,1)/sqrt(3) for d = 3.
    Eigen::MatrixXd projection;
    double width = 640.0;
    double height = 640.0;
    double margin = 40.0;
    /// Longest arrow of each displacement vector, as a fraction of the drawing's extent.
    double arrow_scale = 0.25;
    std::string bar_color = "#333333";
    std::string cable_color = "#1f77b4";
    std::string strut_color = "#d62728";
};

/// The projection actually used for dimension d. Throws InputError for d > 3 without an explicit
/// projection, or a projection of the wrong shape.
Eigen::MatrixXd resolve_projection(const RenderSpec& spec, int dimension);

/// Nodes, members and one arrow group per column of `displacements` (n d rows, node-major).
/// Arrows of zero length are omitted.
std::string render_framework_svg(const FrameworkGraph& graph, const Configuration& p,
                                 const Eigen::MatrixXd& displacements = Eigen::MatrixXd(),
                                 const RenderSpec& spec = {});

/// One polyline per path in the complex plane (real part right, imaginary part up).
std::string render_trajectories_svg(const std::vector<std::vector<std::complex<double>>>& paths,
                                    const RenderSpec& spec = {});

}  // namespace tensegrity
