#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "seqtopo/errors.hpp"

namespace seqtopo {

using Curve = Eigen::VectorXd;

enum class Metric { Manhattan, Euclidean, Chebyshev, Minkowski };

inline Metric metric_from_string(const std::string& s) {
    if (s == "manhattan") return Metric::Manhattan;
    if (s == "euclidean") return Metric::Euclidean;
    if (s == "chebyshev") return Metric::Chebyshev;
    if (s == "minkowski") return Metric::Minkowski;
    throw ConfigError("unknown metric: " + s);
}

inline double curve_distance(const Curve& a, const Curve& b, Metric metric, double p = 2.0) {
    if (a.size() != b.size()) throw ConfigError("curve_distance: grids differ in length");
    const Curve d = a - b;
    switch (metric) {
        case Metric::Manhattan: return d.lpNorm<1>();
        case Metric::Euclidean: return d.lpNorm<2>();
        case Metric::Chebyshev: return d.lpNorm<Eigen::Infinity>();
        case Metric::Minkowski: {
            if (p < 1.0) throw ConfigError("minkowski exponent must be >= 1");
            double s = 0;
            for (Eigen::Index i = 0; i < d.size(); ++i) s += std::pow(std::abs(d(i)), p);
            return std::pow(s, 1.0 / p);
        }
    }
    throw InternalError("unreachable metric");
}

/// Per-id curve families on a shared grid (e.g. "gap1" -> dim-1 spectral gap).
struct FeatureCurveSet {
    std::vector<std::string> ids;
    std::vector<std::map<std::string, Curve>> curves;  // parallel to ids
};

struct DistanceMatrix {
    std::vector<std::string> ids;
    Eigen::MatrixXd d;
};

/// All-pairs distances; with several selected families, per-family distances
/// are summed. Every id must carry every selected family on the same grid.
inline DistanceMatrix distance_matrix(const FeatureCurveSet& set, Metric metric,
                                      const std::vector<std::string>& selectors, double p = 2.0) {
    const std::size_t n = set.ids.size();
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& sel : selectors)
            if (!set.curves[i].count(sel))
                throw InputError("missing curve '" + sel + "' for id '" + set.ids[i] + "'");
    DistanceMatrix out;
    out.ids = set.ids;
    out.d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double dist = 0;
            for (const auto& sel : selectors)
                dist += curve_distance(set.curves[i].at(sel), set.curves[j].at(sel), metric, p);
            out.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dist;
            out.d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = dist;
        }
    return out;
}

enum class Linkage { Average, Single, Complete };

inline Linkage linkage_from_string(const std::string& s) {
    if (s == "average") return Linkage::Average;
    if (s == "single") return Linkage::Single;
    if (s == "complete") return Linkage::Complete;
    throw ConfigError("unknown linkage: " + s);
}

/// Binary merge tree. Leaves are 0..n-1 in input order; internal nodes follow.
struct Dendrogram {
    struct Node {
        int left = -1, right = -1;  // -1 for leaves
        double height = 0.0;
        std::string id;  // leaf id; empty for internal nodes
    };
    std::vector<Node> nodes;
    int root = -1;

    std::vector<std::string> leaves_below(int node) const {
        std::vector<std::string> out;
        collect(node, out);
        return out;
    }

private:
    void collect(int node, std::vector<std::string>& out) const {
        const Node& nd = nodes[static_cast<std::size_t>(node)];
        if (nd.left < 0) {
            out.push_back(nd.id);
            return;
        }
        collect(nd.left, out);
        collect(nd.right, out);
    }
};

/// Agglomerative clustering with the half-distance height convention. The
/// merge pair is the minimum-distance pair, ties broken by the smallest
/// lexicographic (minimum leaf id) pair, so the tree is input-order invariant.
inline Dendrogram cluster_upgma(const DistanceMatrix& dm, Linkage linkage = Linkage::Average) {
    const std::size_t n = dm.ids.size();
    if (n < 2) throw InputError("clustering needs at least 2 ids");

    Dendrogram tree;
    tree.nodes.reserve(2 * n - 1);
    struct Cluster {
        int node;
        std::size_t size;
        std::string rep;  // smallest leaf id, for tie-breaking
    };
    std::vector<Cluster> active;
    for (std::size_t i = 0; i < n; ++i) {
        tree.nodes.push_back({-1, -1, 0.0, dm.ids[i]});
        active.push_back({static_cast<int>(i), 1, dm.ids[i]});
    }
    // working distance matrix over active clusters
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d[i][j] = dm.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

    while (active.size() > 1) {
        std::size_t bi = 0, bj = 1;
        bool have = false;
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const auto key = [&](std::size_t a, std::size_t b) {
                    const std::string& ra = active[a].rep;
                    const std::string& rb = active[b].rep;
                    return ra < rb ? std::pair(ra, rb) : std::pair(rb, ra);
                };
                if (!have || d[i][j] < d[bi][bj] ||
                    (d[i][j] == d[bi][bj] && key(i, j) < key(bi, bj))) {
                    bi = i;
                    bj = j;
                    have = true;
                }
            }

        const double h = d[bi][bj] / 2.0;
        Dendrogram::Node parent;
        parent.left = active[bi].node;
        parent.right = active[bj].node;
        parent.height = std::max({h, tree.nodes[parent.left].height, tree.nodes[parent.right].height});
        const int pid = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(parent);

        // Lance-Williams update into slot bi, drop bj
        const std::size_t si = active[bi].size, sj = active[bj].size;
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (k == bi || k == bj) continue;
            double nd = 0.0;
            switch (linkage) {
                case Linkage::Average:
                    nd = (static_cast<double>(si) * d[bi][k] + static_cast<double>(sj) * d[bj][k]) /
                         static_cast<double>(si + sj);
                    break;
                case Linkage::Single: nd = std::min(d[bi][k], d[bj][k]); break;
                case Linkage::Complete: nd = std::max(d[bi][k], d[bj][k]); break;
            }
            d[bi][k] = d[k][bi] = nd;
        }
        active[bi] = {pid, si + sj, std::min(active[bi].rep, active[bj].rep)};
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
        for (auto& row : d) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    tree.root = active[0].node;
    return tree;
}

namespace detail {

inline std::string newick_label(const std::string& id) {
    if (id.find_first_of(" \t()[]{}:;,'\"") == std::string::npos) return id;
    std::string q = "'";
    for (char c : id) {
        q += c;
        if (c == '\'') q += '\'';
    }
    return q + "'";
}

inline std::string format_branch(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

inline void newick_rec(const Dendrogram& t, int node, double parent_height, std::string& out) {
    const auto& nd = t.nodes[static_cast<std::size_t>(node)];
    if (nd.left < 0) {
        out += newick_label(nd.id);
    } else {
        out += "(";
        newick_rec(t, nd.left, nd.height, out);
        out += ",";
        newick_rec(t, nd.right, nd.height, out);
        out += ")";
    }
    out += ":" + format_branch(parent_height - nd.height);
}

}  // namespace detail

/// Standard Newick with branch lengths = parent height - child height.
inline std::string to_newick(const Dendrogram& t) {
    const auto& root = t.nodes[static_cast<std::size_t>(t.root)];
    std::string out;
    if (root.left < 0) {
        out = detail::newick_label(root.id);
    } else {
        out += "(";
        detail::newick_rec(t, root.left, root.height, out);
        out += ",";
        detail::newick_rec(t, root.right, root.height, out);
        out += ")";
    }
    return out + ";";
}

// ---------------------------------------------------------------------------
// Matrix interchange

inline std::string matrix_to_csv(const DistanceMatrix& dm) {
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return std::string(buf);
    };
    std::string out = "id";
    for (const auto& id : dm.ids) out += "," + id;
    out += "\n";
    for (std::size_t i = 0; i < dm.ids.size(); ++i) {
        out += dm.ids[i];
        for (std::size_t j = 0; j < dm.ids.size(); ++j)
            out += "," + fmt(dm.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        out += "\n";
    }
    return out;
}

inline DistanceMatrix matrix_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("matrix CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    DistanceMatrix dm;
    {
        std::size_t pos = line.find(',');
        while (pos != std::string::npos) {
            std::size_t next = line.find(',', pos + 1);
            dm.ids.push_back(line.substr(pos + 1, next == std::string::npos ? std::string::npos
                                                                            : next - pos - 1));
            pos = next;
        }
    }
    const std::size_t n = dm.ids.size();
    if (n == 0) throw InputError("matrix CSV: no ids in header");
    dm.d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (row >= n) throw InputError("matrix CSV: too many rows");
        std::size_t pos = line.find(',');
        if (pos == std::string::npos || line.substr(0, pos) != dm.ids[row])
            throw InputError("matrix CSV: row id mismatch at row " + std::to_string(row + 1));
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t next = line.find(',', pos + 1);
            dm.d(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) =
                std::stod(line.substr(pos + 1, next == std::string::npos ? std::string::npos
                                                                         : next - pos - 1));
            pos = next;
        }
        ++row;
    }
    if (row != n) throw InputError("matrix CSV: expected " + std::to_string(n) + " rows");
    return dm;
}

/// PHYLIP square distance matrix (relaxed names).
inline std::string matrix_to_phylip(const DistanceMatrix& dm) {
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", x);
        return std::string(buf);
    };
    std::string out = std::to_string(dm.ids.size()) + "\n";
    for (std::size_t i = 0; i < dm.ids.size(); ++i) {
        out += dm.ids[i];
        for (std::size_t j = 0; j < dm.ids.size(); ++j)
            out += "  " + fmt(dm.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        out += "\n";
    }
    return out;
}

}  // namespace seqtopo
