#include "tensegrity/render.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace tensegrity {

namespace {

const char* const kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
                                "#42d4f4", "#f032e6", "#9a6324", "#469990", "#808000"};

std::string num(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << (std::abs(v) < 0.005 ? 0.0 : v);
    return s.str();
}

// Maps plane coordinates into the SVG viewport, flipping y.
struct Viewport {
    double min_x, min_y, scale, height, margin, offset_x, offset_y;

    static Viewport fit(const std::vector<Eigen::Vector2d>& pts, const RenderSpec& spec) {
        double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
        double hi_x = -lo_x, hi_y = -lo_x;
        for (const auto& p : pts) {
            lo_x = std::min(lo_x, p.x());
            hi_x = std::max(hi_x, p.x());
            lo_y = std::min(lo_y, p.y());
            hi_y = std::max(hi_y, p.y());
        }
        if (pts.empty()) lo_x = lo_y = hi_x = hi_y = 0.0;
        const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
        const double usable = std::min(spec.width, spec.height) - 2.0 * spec.margin;
        const double scale = usable / span;
        const double off_x = (spec.width - 2.0 * spec.margin - (hi_x - lo_x) * scale) / 2.0;
        const double off_y = (spec.height - 2.0 * spec.margin - (hi_y - lo_y) * scale) / 2.0;
        return Viewport{lo_x, lo_y, scale, spec.height, spec.margin, off_x, off_y};
    }

    Eigen::Vector2d map(const Eigen::Vector2d& p) const {
        return {margin + offset_x + (p.x() - min_x) * scale, height - (margin + offset_y + (p.y() - min_y) * scale)};
    }
};

void header(std::ostringstream& out, const RenderSpec& spec) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(spec.width) << "\" height=\""
        << num(spec.height) << "\" viewBox=\"0 0 " << num(spec.width) << ' ' << num(spec.height) << "\">\n"
        << "  <defs>\n";
    for (std::size_t k = 0; k < std::size(kPalette); ++k)
        out << "    <marker id=\"head" << k << "\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
            << "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"" << kPalette[k]
            << "\"/></marker>\n";
    out << "  </defs>\n"
        << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

Eigen::MatrixXd resolve_projection(const RenderSpec& spec, int dimension) {
    if (spec.projection.size() != 0) {
        if (spec.projection.rows() != 2 || spec.projection.cols() != dimension)
            throw InputError("projection must be 2 x " + std::to_string(dimension));
        return spec.projection;
    }
    switch (dimension) {
        case 1: return (Eigen::MatrixXd(2, 1) << 1.0, 0.0).finished();
        case 2: return Eigen::MatrixXd::Identity(2, 2);
        case 3: {
            Eigen::MatrixXd proj(2, 3);
            proj.row(0) << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
            proj.row(1) << -1.0 / std::sqrt(6.0), -1.0 / std::sqrt(6.0), 2.0 / std::sqrt(6.0);
            return proj;
        }
        default:
            throw InputError("dimension " + std::to_string(dimension) + " needs an explicit projection");
    }
}

std::string render_framework_svg(const FrameworkGraph& graph, const Configuration& p,
                                 const Eigen::MatrixXd& displacements, const RenderSpec& spec) {
    require_shape(graph, p);
    if (!(spec.arrow_scale > 0.0)) throw InputError("arrow scale must be positive");
    const int n = graph.node_count();
    const int d = graph.dimension();
    if (displacements.size() != 0 && displacements.rows() != graph.coordinate_count())
        throw InputError("displacement field must have n*d = " + std::to_string(graph.coordinate_count()) + " rows");
    const Eigen::MatrixXd proj = resolve_projection(spec, d);

    std::vector<Eigen::Vector2d> nodes;
    for (int i = 0; i < n; ++i) nodes.emplace_back(proj * p.node(i));
    const Viewport vp = Viewport::fit(nodes, spec);
    const double extent = (std::min(spec.width, spec.height) - 2.0 * spec.margin);

    std::ostringstream out;
    header(out, spec);
    out << "  <g class=\"members\">\n";
    for (const Member& m : graph.members()) {
        const auto a = vp.map(nodes[static_cast<std::size_t>(m.i)]);
        const auto b = vp.map(nodes[static_cast<std::size_t>(m.j)]);
        const std::string& color = m.kind == MemberKind::bar     ? spec.bar_color
                                   : m.kind == MemberKind::cable ? spec.cable_color
                                                                 : spec.strut_color;
        const char* width = m.kind == MemberKind::strut ? "5" : m.kind == MemberKind::cable ? "1.5" : "3";
        out << "    <line class=\"member " << to_string(m.kind) << "\" x1=\"" << num(a.x()) << "\" y1=\""
            << num(a.y()) << "\" x2=\"" << num(b.x()) << "\" y2=\"" << num(b.y()) << "\" stroke=\"" << color
            << "\" stroke-width=\"" << width << "\"/>\n";
    }
    out << "  </g>\n";

    for (Eigen::Index k = 0; k < displacements.cols(); ++k) {
        const std::size_t color = static_cast<std::size_t>(k) % std::size(kPalette);
        out << "  <g class=\"arrows\" data-vector=\"" << k << "\" stroke=\"" << kPalette[color] << "\">\n";
        std::vector<Eigen::Vector2d> arrows;
        double longest = 0.0;
        for (int i = 0; i < n; ++i) {
            arrows.emplace_back(proj * displacements.col(k).segment(i * d, d));
            longest = std::max(longest, displacements.col(k).segment(i * d, d).norm());
        }
        if (longest > 0.0) {
            const double factor = spec.arrow_scale * extent / longest;
            for (int i = 0; i < n; ++i) {
                if (displacements.col(k).segment(i * d, d).norm() <= 1e-9 * longest) continue;
                const auto a = vp.map(nodes[static_cast<std::size_t>(i)]);
                const Eigen::Vector2d delta = arrows[static_cast<std::size_t>(i)] * factor;
                if (delta.norm() < 0.5) continue;  // projects to (nearly) nothing
                const Eigen::Vector2d b(a.x() + delta.x(), a.y() - delta.y());
                out << "    <line class=\"arrow\" x1=\"" << num(a.x()) << "\" y1=\"" << num(a.y()) << "\" x2=\""
                    << num(b.x()) << "\" y2=\"" << num(b.y()) << "\" stroke-width=\"2\" marker-end=\"url(#head"
                    << color << ")\"/>\n";
            }
        }
        out << "  </g>\n";
    }

    out << "  <g class=\"nodes\">\n";
    for (int i = 0; i < n; ++i) {
        const auto a = vp.map(nodes[static_cast<std::size_t>(i)]);
        out << "    <circle class=\"node\" data-node=\"" << i + 1 << "\" cx=\"" << num(a.x()) << "\" cy=\""
            << num(a.y()) << "\" r=\"6\" fill=\"black\"/>\n";
        out << "    <text x=\"" << num(a.x() + 8) << "\" y=\"" << num(a.y() - 8)
            << "\" font-family=\"sans-serif\" font-size=\"14\">" << i + 1 << "</text>\n";
    }
    out << "  </g>\n</svg>\n";
    return out.str();
}

std::string render_trajectories_svg(const std::vector<std::vector<std::complex<double>>>& paths,
                                    const RenderSpec& spec) {
    std::vector<Eigen::Vector2d> pts;
    for (const auto& path : paths)
        for (const auto& z : path) pts.emplace_back(z.real(), z.imag());
    const Viewport vp = Viewport::fit(pts, spec);

    std::ostringstream out;
    header(out, spec);
    // Axes through the origin when it is in view.
    const auto origin = vp.map({0.0, 0.0});
    out << "  <g class=\"axes\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n"
        << "    <line x1=\"0\" y1=\"" << num(origin.y()) << "\" x2=\"" << num(spec.width) << "\" y2=\""
        << num(origin.y()) << "\"/>\n"
        << "    <line x1=\"" << num(origin.x()) << "\" y1=\"0\" x2=\"" << num(origin.x()) << "\" y2=\""
        << num(spec.height) << "\"/>\n"
        << "  </g>\n";
    for (std::size_t k = 0; k < paths.size(); ++k) {
        const auto& path = paths[k];
        if (path.empty()) continue;
        const char* color = kPalette[k % std::size(kPalette)];
        std::ostringstream end;
        end << std::setprecision(12) << path.back().real() << ',' << path.back().imag();
        out << "  <polyline class=\"trajectory\" data-end=\"" << end.str() << "\" fill=\"none\" stroke=\""
            << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t s = 0; s < path.size(); ++s) {
            const auto q = vp.map({path[s].real(), path[s].imag()});
            out << (s ? " " : "") << num(q.x()) << ',' << num(q.y());
        }
        out << "\"/>\n";
        const auto a = vp.map({path.front().real(), path.front().imag()});
        const auto b = vp.map({path.back().real(), path.back().imag()});
        out << "  <circle class=\"start\" cx=\"" << num(a.x()) << "\" cy=\"" << num(a.y()) << "\" r=\"4\" fill=\"white\" stroke=\""
            << color << "\"/>\n";
        out << "  <circle class=\"endpoint\" cx=\"" << num(b.x()) << "\" cy=\"" << num(b.y()) << "\" r=\"5\" fill=\""
            << color << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace tensegrity
