#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "seqtopo/persistence.hpp"
#include "seqtopo/phylo.hpp"

namespace seqtopo {

namespace detail {

inline std::string svg_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline const char* dim_color(int d) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    return palette[d % 6];
}

}  // namespace detail

/// Fixed-canvas static barcode rendering: one horizontal line per interval,
/// sorted by (dim, birth, death); essential bars run to the right edge with
/// an arrowhead tick.
inline std::string barcode_svg(const Barcode& b, const std::string& title) {
    const double width = 900, height_per_bar = 14, margin = 60, top = 40;
    std::vector<Interval> bars = b.intervals;
    const std::size_t n = bars.size();
    const double height = top + 30 + height_per_bar * static_cast<double>(std::max<std::size_t>(n, 1));

    double lo = 0, hi = 1;
    bool first = true;
    for (const auto& iv : bars) {
        const double bb = to_double(iv.birth);
        const double dd = iv.essential ? bb : to_double(iv.death);
        if (first) {
            lo = std::min(bb, dd);
            hi = std::max(bb, dd);
            first = false;
        } else {
            lo = std::min({lo, bb, dd});
            hi = std::max({hi, bb, dd});
        }
    }
    if (hi <= lo) hi = lo + 1;
    const double span = hi - lo;
    auto x_of = [&](double v) { return margin + (v - lo) / span * (width - 2 * margin); };

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_num(width) +
                    "\" height=\"" + detail::svg_num(height) + "\">\n";
    s += "<text x=\"" + detail::svg_num(margin) + "\" y=\"20\" font-size=\"14\">" + title +
         "</text>\n";
    // axis
    s += "<line x1=\"" + detail::svg_num(margin) + "\" y1=\"" + detail::svg_num(height - 20) +
         "\" x2=\"" + detail::svg_num(width - margin) + "\" y2=\"" + detail::svg_num(height - 20) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + detail::svg_num(margin) + "\" y=\"" + detail::svg_num(height - 6) +
         "\" font-size=\"11\">" + detail::svg_num(lo) + "</text>\n";
    s += "<text x=\"" + detail::svg_num(width - margin) + "\" y=\"" + detail::svg_num(height - 6) +
         "\" font-size=\"11\" text-anchor=\"end\">" + detail::svg_num(hi) + "</text>\n";

    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& iv = bars[i];
        const double y = top + height_per_bar * static_cast<double>(i);
        const double x1 = x_of(to_double(iv.birth));
        const double x2 = iv.essential ? (width - margin) : x_of(to_double(iv.death));
        const double xa = std::min(x1, x2), xb = std::max(x1, x2);
        s += "<line x1=\"" + detail::svg_num(xa) + "\" y1=\"" + detail::svg_num(y) + "\" x2=\"" +
             detail::svg_num(xb) + "\" y2=\"" + detail::svg_num(y) + "\" stroke=\"" +
             detail::dim_color(iv.dim) + "\" stroke-width=\"3\"/>\n";
        if (iv.essential)
            s += "<text x=\"" + detail::svg_num(width - margin + 4) + "\" y=\"" +
                 detail::svg_num(y + 4) + "\" font-size=\"11\">&#8734;</text>\n";
    }
    return s + "</svg>\n";
}

/// Static polyline plot of one or more named curves over a numeric grid.
inline std::string curves_svg(const std::vector<double>& grid,
                              const std::vector<std::pair<std::string, std::vector<double>>>& series,
                              const std::string& title) {
    const double width = 900, height = 480, margin = 60;
    double ymax = 1e-12, xlo = 0, xhi = 1;
    if (!grid.empty()) {
        xlo = *std::min_element(grid.begin(), grid.end());
        xhi = *std::max_element(grid.begin(), grid.end());
    }
    if (xhi <= xlo) xhi = xlo + 1;
    for (const auto& [name, vals] : series)
        for (double v : vals) ymax = std::max(ymax, v);

    auto x_of = [&](double v) { return margin + (v - xlo) / (xhi - xlo) * (width - 2 * margin); };
    auto y_of = [&](double v) { return height - margin - v / ymax * (height - 2 * margin); };

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_num(width) +
                    "\" height=\"" + detail::svg_num(height) + "\">\n";
    s += "<text x=\"" + detail::svg_num(margin) + "\" y=\"20\" font-size=\"14\">" + title +
         "</text>\n";
    s += "<line x1=\"" + detail::svg_num(margin) + "\" y1=\"" + detail::svg_num(height - margin) +
         "\" x2=\"" + detail::svg_num(width - margin) + "\" y2=\"" +
         detail::svg_num(height - margin) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + detail::svg_num(margin) + "\" y1=\"" + detail::svg_num(margin) +
         "\" x2=\"" + detail::svg_num(margin) + "\" y2=\"" + detail::svg_num(height - margin) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + detail::svg_num(margin - 4) + "\" y=\"" + detail::svg_num(margin) +
         "\" font-size=\"11\" text-anchor=\"end\">" + detail::svg_num(ymax) + "</text>\n";
    s += "<text x=\"" + detail::svg_num(margin) + "\" y=\"" + detail::svg_num(height - margin + 14) +
         "\" font-size=\"11\">" + detail::svg_num(xlo) + "</text>\n";
    s += "<text x=\"" + detail::svg_num(width - margin) + "\" y=\"" +
         detail::svg_num(height - margin + 14) + "\" font-size=\"11\" text-anchor=\"end\">" +
         detail::svg_num(xhi) + "</text>\n";

    int k = 0;
    for (const auto& [name, vals] : series) {
        std::string pts;
        for (std::size_t i = 0; i < vals.size() && i < grid.size(); ++i) {
            if (i) pts += " ";
            pts += detail::svg_num(x_of(grid[i])) + "," + detail::svg_num(y_of(vals[i]));
        }
        s += "<polyline fill=\"none\" stroke=\"" + std::string(detail::dim_color(k)) +
             "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
        s += "<text x=\"" + detail::svg_num(width - margin + 4) + "\" y=\"" +
             detail::svg_num(margin + 16 * k) + "\" font-size=\"11\" fill=\"" +
             detail::dim_color(k) + "\">" + name + "</text>\n";
        ++k;
    }
    return s + "</svg>\n";
}

namespace detail {

inline double layout_tree(const Dendrogram& t, int node, double& next_leaf_y, double leaf_step,
                          std::vector<double>& ys) {
    const auto& nd = t.nodes[static_cast<std::size_t>(node)];
    if (nd.left < 0) {
        ys[static_cast<std::size_t>(node)] = next_leaf_y;
        next_leaf_y += leaf_step;
    } else {
        const double a = layout_tree(t, nd.left, next_leaf_y, leaf_step, ys);
        const double b = layout_tree(t, nd.right, next_leaf_y, leaf_step, ys);
        ys[static_cast<std::size_t>(node)] = (a + b) / 2;
    }
    return ys[static_cast<std::size_t>(node)];
}

}  // namespace detail

/// Horizontal dendrogram: leaves at the right, merge height on the x axis
/// (root at the left edge).
inline std::string dendrogram_svg(const Dendrogram& t, const std::string& title) {
    std::size_t leaf_count = 0;
    for (const auto& nd : t.nodes)
        if (nd.left < 0) ++leaf_count;
    const double leaf_step = 18, margin = 60, top = 40;
    const double width = 900;
    const double height = top + leaf_step * static_cast<double>(leaf_count) + 30;
    const double hmax = std::max(1e-12, t.nodes[static_cast<std::size_t>(t.root)].height);
    auto x_of = [&](double h) { return width - margin - (h / hmax) * (width - 2 * margin - 160); };

    std::vector<double> ys(t.nodes.size(), 0.0);
    double next_y = top;
    detail::layout_tree(t, t.root, next_y, leaf_step, ys);

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_num(width) +
                    "\" height=\"" + detail::svg_num(height) + "\">\n";
    s += "<text x=\"" + detail::svg_num(margin) + "\" y=\"20\" font-size=\"14\">" + title +
         "</text>\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& nd = t.nodes[i];
        if (nd.left < 0) {
            s += "<text x=\"" + detail::svg_num(x_of(0) + 6) + "\" y=\"" +
                 detail::svg_num(ys[i] + 4) + "\" font-size=\"11\">" + nd.id + "</text>\n";
            continue;
        }
        const double xp = x_of(nd.height);
        for (int child : {nd.left, nd.right}) {
            const auto& cn = t.nodes[static_cast<std::size_t>(child)];
            const double xc = x_of(cn.height);
            const double yc = ys[static_cast<std::size_t>(child)];
            s += "<line x1=\"" + detail::svg_num(xp) + "\" y1=\"" + detail::svg_num(yc) +
                 "\" x2=\"" + detail::svg_num(xc) + "\" y2=\"" + detail::svg_num(yc) +
                 "\" stroke=\"black\"/>\n";
        }
        s += "<line x1=\"" + detail::svg_num(xp) + "\" y1=\"" +
             detail::svg_num(ys[static_cast<std::size_t>(nd.left)]) + "\" x2=\"" +
             detail::svg_num(xp) + "\" y2=\"" +
             detail::svg_num(ys[static_cast<std::size_t>(nd.right)]) + "\" stroke=\"black\"/>\n";
    }
    return s + "</svg>\n";
}

}  // namespace seqtopo
