#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "epsplane/locus_solver.hpp"
#include "epsplane/material_db.hpp"
#include "epsplane/regions.hpp"

namespace epsplane {

// ============================================================================
// Permittivity plane plot
// ============================================================================

/// Fixed log-log canvas. The window comfortably holds the builtin data and
/// the default regions; out-of-window values clamp to the frame.
struct PlotOptions {
    double width = 960.0;
    double height = 720.0;
    double margin_left = 70.0;
    double margin_right = 30.0;
    double margin_top = 40.0;
    double margin_bottom = 60.0;
    double real_min = 1.0;
    double real_max = 100.0;
    double loss_min = 1e-4;
    double loss_max = 100.0;
};

namespace detail {

[[nodiscard]] inline std::string svg_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

[[nodiscard]] inline std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out.push_back(c);
        }
    }
    return out;
}

struct LogCanvas {
    PlotOptions opt;

    [[nodiscard]] double x(double real) const {
        const double v = std::clamp(real, opt.real_min, opt.real_max);
        const double t = (std::log10(v) - std::log10(opt.real_min)) /
                         (std::log10(opt.real_max) - std::log10(opt.real_min));
        return opt.margin_left + t * (opt.width - opt.margin_left - opt.margin_right);
    }

    [[nodiscard]] double y(double loss) const {
        const double v = std::clamp(loss, opt.loss_min, opt.loss_max);
        const double t = (std::log10(v) - std::log10(opt.loss_min)) /
                         (std::log10(opt.loss_max) - std::log10(opt.loss_min));
        return opt.height - opt.margin_bottom -
               t * (opt.height - opt.margin_top - opt.margin_bottom);
    }
};

[[nodiscard]] inline std::string decade_label(int exponent) {
    if (exponent >= 0) {
        std::string out = "1";
        out.append(static_cast<std::size_t>(exponent), '0');
        return out;
    }
    std::string out = "0.";
    out.append(static_cast<std::size_t>(-exponent - 1), '0');
    out.push_back('1');
    return out;
}

} // namespace detail

/// Render the database, the region boxes and an optional locus overlay as a
/// standalone SVG document. Output is deterministic: same inputs, same bytes.
[[nodiscard]] inline std::string render_plane_svg(const MaterialDatabase& db, const RegionSet& rs,
                                                  const LocusCurve* overlay = nullptr,
                                                  const PlotOptions& opt = {}) {
    const detail::LogCanvas c{opt};
    const auto num = detail::svg_num;
    std::string s;
    s.reserve(16384);

    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(opt.width) + " " +
         num(opt.height) + "\" font-family=\"sans-serif\">\n";
    s += "<style>\n"
         ".region.hazard { fill: #d62728; fill-opacity: 0.12; stroke: #d62728; stroke-width: 1.5; }\n"
         ".region.safe { fill: #2ca02c; fill-opacity: 0.12; stroke: #2ca02c; stroke-width: 1.5; }\n"
         ".material { fill: #1f77b4; }\n"
         ".label { font-size: 10px; fill: #222222; }\n"
         ".region-label { font-size: 12px; }\n"
         ".axis { stroke: #222222; stroke-width: 1; }\n"
         ".grid { stroke: #bbbbbb; stroke-width: 0.5; stroke-dasharray: 2 3; }\n"
         ".tick { font-size: 11px; fill: #222222; }\n"
         ".title { font-size: 14px; fill: #222222; }\n"
         ".locus { fill: none; stroke: #9467bd; stroke-width: 2; }\n"
         "</style>\n";

    const double plot_left = opt.margin_left;
    const double plot_right = opt.width - opt.margin_right;
    const double plot_top = opt.margin_top;
    const double plot_bottom = opt.height - opt.margin_bottom;

    // Decade gridlines and tick labels.
    const int x_lo = static_cast<int>(std::lround(std::log10(opt.real_min)));
    const int x_hi = static_cast<int>(std::lround(std::log10(opt.real_max)));
    for (int e = x_lo; e <= x_hi; ++e) {
        const double px = c.x(std::pow(10.0, e));
        s += "<line class=\"grid\" x1=\"" + num(px) + "\" y1=\"" + num(plot_top) + "\" x2=\"" +
             num(px) + "\" y2=\"" + num(plot_bottom) + "\"/>\n";
        s += "<text class=\"tick\" x=\"" + num(px) + "\" y=\"" + num(plot_bottom + 16.0) +
             "\" text-anchor=\"middle\">" + detail::decade_label(e) + "</text>\n";
    }
    const int y_lo = static_cast<int>(std::lround(std::log10(opt.loss_min)));
    const int y_hi = static_cast<int>(std::lround(std::log10(opt.loss_max)));
    for (int e = y_lo; e <= y_hi; ++e) {
        const double py = c.y(std::pow(10.0, e));
        s += "<line class=\"grid\" x1=\"" + num(plot_left) + "\" y1=\"" + num(py) + "\" x2=\"" +
             num(plot_right) + "\" y2=\"" + num(py) + "\"/>\n";
        s += "<text class=\"tick\" x=\"" + num(plot_left - 8.0) + "\" y=\"" + num(py + 4.0) +
             "\" text-anchor=\"end\">" + detail::decade_label(e) + "</text>\n";
    }

    // Frame and axis titles.
    s += "<rect class=\"axis\" fill=\"none\" x=\"" + num(plot_left) + "\" y=\"" + num(plot_top) +
         "\" width=\"" + num(plot_right - plot_left) + "\" height=\"" +
         num(plot_bottom - plot_top) + "\"/>\n";
    s += "<text class=\"title\" x=\"" + num((plot_left + plot_right) / 2.0) + "\" y=\"" +
         num(opt.height - 14.0) + "\" text-anchor=\"middle\">relative permittivity, real part "
         "&#949;&#8242;</text>\n";
    s += "<text class=\"title\" x=\"18\" y=\"" + num((plot_top + plot_bottom) / 2.0) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num((plot_top + plot_bottom) / 2.0) + ")\">loss &#949;&#8243;</text>\n";

    // Region boxes.
    for (const auto& r : rs.regions) {
        const std::string kind = r.semantics == RegionKind::hazard ? "hazard" : "safe";
        const double rx = c.x(r.real_min);
        const double ry = c.y(r.loss_max);
        const double rw = c.x(r.real_max) - rx;
        const double rh = c.y(r.loss_min) - ry;
        s += "<rect class=\"region " + kind + "\" x=\"" + num(rx) + "\" y=\"" + num(ry) +
             "\" width=\"" + num(rw) + "\" height=\"" + num(rh) + "\"/>\n";
        s += "<text class=\"region-label\" x=\"" + num(rx + 4.0) + "\" y=\"" + num(ry + 14.0) +
             "\" fill=\"" + (r.semantics == RegionKind::hazard ? "#d62728" : "#2ca02c") + "\">" +
             detail::xml_escape(r.name) + "</text>\n";
    }

    // Locus overlay under the points.
    if (overlay != nullptr && !overlay->points.empty()) {
        s += "<polyline class=\"locus\" points=\"";
        bool first = true;
        for (const auto& p : overlay->points) {
            if (!first)
                s.push_back(' ');
            s += num(c.x(p.real)) + "," + num(c.y(p.loss));
            first = false;
        }
        s += "\"/>\n";
    }

    // Material points with labels.
    for (const auto& m : db.records) {
        const double px = c.x(m.permittivity.real);
        const double py = c.y(m.permittivity.loss);
        s += "<circle class=\"material\" cx=\"" + num(px) + "\" cy=\"" + num(py) +
             "\" r=\"3\"/>\n";
        s += "<text class=\"label\" x=\"" + num(px + 5.0) + "\" y=\"" + num(py - 4.0) + "\">" +
             detail::xml_escape(m.name) + "</text>\n";
    }

    s += "</svg>\n";
    return s;
}

} // namespace epsplane
