#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqtopo/errors.hpp"
#include "seqtopo/field.hpp"
#include "seqtopo/filtration.hpp"
#include "seqtopo/quotient.hpp"

namespace seqtopo {

struct Interval {
    int dim = 0;
    Rational birth;
    bool essential = false;  // never dies
    Rational death;          // meaningful when !essential
    std::vector<std::string> representative;  // birth cycle, when requested
};

struct Barcode {
    bool decreasing = false;  // native parameter direction
    std::vector<Interval> intervals;     // positive-length bars
    std::vector<Interval> zero_length;   // diagnostics: classes with birth == death

    /// True when the bar is alive at native parameter t (half-open death).
    static bool covers(const Interval& iv, const Rational& t, bool decreasing) {
        if (decreasing) return iv.birth >= t && (iv.essential || iv.death < t);
        return iv.birth <= t && (iv.essential || iv.death > t);
    }
};

namespace detail {

template <class T>
using SparseCol = std::vector<std::pair<std::uint32_t, T>>;  // sorted by row

template <class T>
void add_scaled(SparseCol<T>& dst, const SparseCol<T>& src, const T& f) {
    SparseCol<T> out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            T v = f * src[j].second;
            if (!fld::is_zero(v)) out.emplace_back(src[j].first, std::move(v));
            ++j;
        } else {
            T v = dst[i].second + f * src[j].second;
            if (!fld::is_zero(v)) out.emplace_back(dst[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

/// A filtration cell with field-valued boundary, for towers whose chain
/// spaces are not spanned by single simplices (path homology bases).
template <class T>
struct ChainCell {
    int dim = 0;
    Rational value;
    std::string name;
    SparseCol<T> boundary;  // references earlier cells, sorted by index
};

/// Column-reduction persistence over an exact field. Cells must arrive in
/// filtration order with boundaries referencing earlier cells. Dimensions are
/// processed top-down with clearing; clearing is disabled when representatives
/// are requested, since cleared birth columns never accumulate their cycle.
template <class T>
Barcode reduce_filtered_cells(const std::vector<ChainCell<T>>& cells, bool decreasing, int maxdim,
                              bool want_representatives) {
    const std::uint32_t n = static_cast<std::uint32_t>(cells.size());
    for (std::uint32_t j = 0; j < n; ++j)
        for (const auto& [fi, c] : cells[j].boundary)
            if (fi >= j)
                throw InternalError("filtration order violation at cell " + cells[j].name);

    int top = 0;
    for (const auto& c : cells) top = std::max(top, c.dim);
    const int reduce_top = std::min(top, maxdim + 1);

    std::vector<SparseCol<T>> reduced(n);
    std::vector<SparseCol<T>> cascade(n);  // V columns, only with representatives
    std::unordered_map<std::uint32_t, std::uint32_t> death_by_birth;  // birth row -> death col
    std::vector<char> is_death(n, 0), cleared(n, 0);

    for (int d = reduce_top; d >= 1; --d) {
        std::unordered_map<std::uint32_t, std::uint32_t> low_to_col;
        for (std::uint32_t j = 0; j < n; ++j) {
            if (cells[j].dim != d) continue;
            if (cleared[j]) continue;
            SparseCol<T> col = cells[j].boundary;
            if (want_representatives) cascade[j] = {{j, fld::from_int<T>(1)}};
            while (!col.empty()) {
                const std::uint32_t low = col.back().first;
                auto it = low_to_col.find(low);
                if (it == low_to_col.end()) break;
                const std::uint32_t j2 = it->second;
                const T f = -(col.back().second * fld::inverse(reduced[j2].back().second));
                add_scaled(col, reduced[j2], f);
                if (want_representatives) add_scaled(cascade[j], cascade[j2], f);
            }
            if (!col.empty()) {
                const std::uint32_t low = col.back().first;
                low_to_col.emplace(low, j);
                death_by_birth.emplace(low, j);
                is_death[j] = 1;
                if (!want_representatives) cleared[low] = 1;
                reduced[j] = std::move(col);
            }
        }
    }

    Barcode bc;
    bc.decreasing = decreasing;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (is_death[i] || cells[i].dim > maxdim) continue;
        // i is a birth: its own column is zero (or was cleared).
        Interval iv;
        iv.dim = cells[i].dim;
        iv.birth = cells[i].value;
        auto it = death_by_birth.find(i);
        if (it == death_by_birth.end()) {
            iv.essential = true;
        } else {
            iv.death = cells[it->second].value;
        }
        if (want_representatives && !cascade[i].empty()) {
            for (const auto& [ci, coeff] : cascade[i]) {
                std::string term = fld::str(coeff);
                iv.representative.push_back(term == "1" ? cells[ci].name
                                                        : term + "*" + cells[ci].name);
            }
        }
        if (!iv.essential && iv.birth == iv.death)
            bc.zero_length.push_back(std::move(iv));
        else
            bc.intervals.push_back(std::move(iv));
    }

    auto order = [&](const Interval& a, const Interval& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return bc.decreasing ? (b.birth < a.birth) : (a.birth < b.birth);
        if (a.essential != b.essential) return b.essential;
        if (!a.essential && a.death != b.death)
            return bc.decreasing ? (b.death < a.death) : (a.death < b.death);
        return false;
    };
    std::stable_sort(bc.intervals.begin(), bc.intervals.end(), order);
    std::stable_sort(bc.zero_length.begin(), bc.zero_length.end(), order);
    return bc;
}

}  // namespace detail

template <class T>
Barcode persistent_homology_t(const FilteredComplex& F, int maxdim, bool want_representatives = false) {
    std::vector<detail::ChainCell<T>> cells;
    cells.reserve(F.cells.size());
    for (const auto& c : F.cells) {
        detail::ChainCell<T> cc;
        cc.dim = c.dim;
        cc.value = c.value;
        cc.name = c.name;
        for (const auto& [fi, coeff] : c.boundary) {
            T v = fld::from_int<T>(coeff);
            if (!fld::is_zero(v)) cc.boundary.emplace_back(fi, std::move(v));
        }
        std::sort(cc.boundary.begin(), cc.boundary.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        cells.push_back(std::move(cc));
    }
    return detail::reduce_filtered_cells(cells, F.decreasing, maxdim, want_representatives);
}

inline Barcode persistent_homology(const FilteredComplex& F, FieldTag field, int maxdim,
                                   bool want_representatives = false) {
    return field == FieldTag::GF2 ? persistent_homology_t<GF2>(F, maxdim, want_representatives)
                                  : persistent_homology_t<Rational>(F, maxdim, want_representatives);
}

/// Persistent Betti number: bars containing the closed window [a, b] of the
/// native parameter, i.e. birth <= a and death >= b for increasing barcodes
/// (mirrored for decreasing ones). Essential bars count for every b
/// including b = +inf.
inline long persistent_betti(const Barcode& B, int n, const Rational& a, const ExtendedValue& b) {
    if (!B.decreasing) {
        if (b.is_finite() && b.value() < a) throw ConfigError("persistent_betti: needs a <= b");
    } else {
        if (b.is_finite() && b.value() > a)
            throw ConfigError("persistent_betti: needs a >= b for decreasing barcodes");
    }
    long count = 0;
    for (const auto& iv : B.intervals) {
        if (iv.dim != n) continue;
        const bool born = B.decreasing ? iv.birth >= a : iv.birth <= a;
        bool lasts;
        if (iv.essential)
            lasts = true;
        else if (b.is_infinite())
            lasts = false;
        else
            lasts = B.decreasing ? iv.death <= b.value() : iv.death >= b.value();
        if (born && lasts) ++count;
    }
    return count;
}

/// rank im(H_n(a) -> H_n(b)) for grid values a <= b: bars with birth <= a and
/// death strictly beyond b. This is the quantity the persistent Laplacian
/// kernel computes.
inline long persistent_rank(const Barcode& B, int n, const Rational& a, const Rational& b) {
    long count = 0;
    for (const auto& iv : B.intervals) {
        if (iv.dim != n) continue;
        const bool born = B.decreasing ? iv.birth >= a : iv.birth <= a;
        const bool alive_past =
            iv.essential || (B.decreasing ? iv.death < b : iv.death > b);
        if (born && alive_past) ++count;
    }
    return count;
}

struct BettiCurve {
    int dim = 0;
    std::vector<Rational> grid;
    std::vector<long> values;
};

inline BettiCurve betti_curve(const Barcode& B, const std::vector<Rational>& grid, int n) {
    BettiCurve c;
    c.dim = n;
    c.grid = grid;
    c.values.reserve(grid.size());
    for (const auto& t : grid) {
        long v = 0;
        for (const auto& iv : B.intervals)
            if (iv.dim == n && Barcode::covers(iv, t, B.decreasing)) ++v;
        c.values.push_back(v);
    }
    return c;
}

/// Persistence of the sublevel filtration of the quotient complex under an
/// orbit-averaged table. The coefficient field is significant here.
inline Barcode classifying_barcodes(const QuotientTable& q, FieldTag field, int maxdim,
                                    bool want_representatives = false) {
    return persistent_homology(quotient_sublevel_filtered_complex(q), field, maxdim,
                               want_representatives);
}

// ---------------------------------------------------------------------------
// Interchange formats

/// Barcode JSON. Values are doubles; "inf" marks essential bars.
inline std::string barcode_to_json(const Barcode& B, const std::string& id,
                                   const std::string& function, FieldTag field) {
    auto num = [](const Rational& r) {
        std::ostringstream os;
        os.precision(17);
        os << to_double(r);
        return os.str();
    };
    auto interval_json = [&](const Interval& iv) {
        std::string s = "{\"dim\":" + std::to_string(iv.dim) + ",\"birth\":" + num(iv.birth) +
                        ",\"death\":";
        s += iv.essential ? std::string("\"inf\"") : num(iv.death);
        if (!iv.representative.empty()) {
            s += ",\"representative\":[";
            for (std::size_t i = 0; i < iv.representative.size(); ++i) {
                if (i) s += ",";
                s += "\"" + iv.representative[i] + "\"";
            }
            s += "]";
        }
        return s + "}";
    };
    std::string out = "{\"id\":\"" + id + "\",\"function\":\"" + function + "\",\"field\":\"" +
                      field_name(field) + "\",\"parameter_direction\":\"" +
                      (B.decreasing ? "decreasing" : "increasing") + "\",\"intervals\":[";
    for (std::size_t i = 0; i < B.intervals.size(); ++i) {
        if (i) out += ",";
        out += interval_json(B.intervals[i]);
    }
    out += "],\"zero_length_diagnostics\":[";
    for (std::size_t i = 0; i < B.zero_length.size(); ++i) {
        if (i) out += ",";
        out += interval_json(B.zero_length[i]);
    }
    return out + "]}";
}

/// Exact CSV: one interval per row, rationals in p/q form, "inf" deaths.
inline std::string barcode_to_csv(const Barcode& B) {
    std::string out = "dim,birth,death\n";
    for (const auto& iv : B.intervals)
        out += std::to_string(iv.dim) + "," + to_string(iv.birth) + "," +
               (iv.essential ? "inf" : to_string(iv.death)) + "\n";
    return out;
}

}  // namespace seqtopo
