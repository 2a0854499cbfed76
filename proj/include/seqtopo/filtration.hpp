#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "seqtopo/alphabet.hpp"
#include "seqtopo/delta_complex.hpp"
#include "seqtopo/errors.hpp"
#include "seqtopo/rational.hpp"
#include "seqtopo/simplex.hpp"

namespace seqtopo {

enum class Direction { Sublevel, Superlevel };

/// Values of a filtration function on every tuple up to the dimension cap.
/// `face_preserving` certifies the direction-appropriate monotonicity:
///   Sublevel:   value(d_i s) <= value(s)  (sublevel sets are complexes)
///   Superlevel: value(d_i s) >= value(s)  (superlevel sets are complexes)
struct FiltrationTable {
    int alphabet_size = 4;
    int dmax = 3;
    bool face_preserving = false;
    Direction direction = Direction::Sublevel;
    std::vector<std::vector<ExtendedValue>> values;  // [k][rank], tuple length k+1

    void allocate() {
        values.assign(dmax + 1, {});
        for (int k = 0; k <= dmax; ++k)
            values[k].assign(tuple_count(k + 1, alphabet_size), ExtendedValue::infinity());
    }

    const ExtendedValue& at(const Simplex& s) const {
        return values[simplex_dim(s)][tuple_rank(s, alphabet_size)];
    }
    ExtendedValue& at(const Simplex& s) {
        return values[simplex_dim(s)][tuple_rank(s, alphabet_size)];
    }

    /// Checks the direction-appropriate face inequality over the whole table.
    bool check_face_preserving() const {
        for (int k = 1; k <= dmax; ++k) {
            for (std::size_t r = 0; r < values[k].size(); ++r) {
                Simplex s = tuple_unrank(r, k + 1, alphabet_size);
                for (int i = 0; i <= k; ++i) {
                    const ExtendedValue& fv = values[k - 1][tuple_rank(face(s, i), alphabet_size)];
                    if (direction == Direction::Sublevel ? (values[k][r] < fv) : (fv < values[k][r]))
                        return false;
                }
            }
        }
        return true;
    }
};

namespace detail {

// Flat per-length node arrays for the complete tuple trie: node (len, rank)
// has parent (len-1, rank/B) and last symbol rank%B.
struct TupleTrie {
    int base, max_len;
    std::vector<std::size_t> count;  // count[len] = B^len
    explicit TupleTrie(int b, int dmax) : base(b), max_len(dmax + 1) {
        count.resize(max_len + 1, 1);
        for (int l = 1; l <= max_len; ++l) count[l] = count[l - 1] * static_cast<std::size_t>(b);
    }
};

}  // namespace detail

/// Minimal-window table: value(s) = smallest positional span of an in-order
/// (not necessarily contiguous) embedding of the tuple in the sequence, +inf
/// when none exists. Single left-to-right pass maintaining, per trie node,
/// the latest start position completing that node at the current position.
inline FiltrationTable min_window_table(const Sequence& xi, int dmax, long value_cap,
                                        int alphabet_size = 4) {
    if (xi.codes.empty()) throw InputError("min_window_table: empty sequence");
    if (dmax < 0 || value_cap < 0) throw ConfigError("dmax and value_cap must be non-negative");
    detail::TupleTrie trie(alphabet_size, dmax);
    const int B = alphabet_size;

    constexpr std::int32_t kUnset = -1;
    std::vector<std::vector<std::int32_t>> latest_start(trie.max_len + 1);
    std::vector<std::vector<std::int32_t>> best(trie.max_len + 1);
    for (int l = 1; l <= trie.max_len; ++l) {
        latest_start[l].assign(trie.count[l], kUnset);
        best[l].assign(trie.count[l], std::numeric_limits<std::int32_t>::max());
    }

    const std::int32_t n = static_cast<std::int32_t>(xi.codes.size());
    for (std::int32_t t = 0; t < n; ++t) {
        const int c = xi.codes[static_cast<std::size_t>(t)];
        // Children before parents so a node reads its parent's state from
        // strictly earlier positions when both end in the same symbol.
        for (int l = trie.max_len; l >= 1; --l) {
            auto& dp = latest_start[l];
            auto& bs = best[l];
            const std::size_t parents = trie.count[l - 1];
            if (l == 1) {
                dp[static_cast<std::size_t>(c)] = t;
                bs[static_cast<std::size_t>(c)] = 0;
                continue;
            }
            const auto& pdp = latest_start[l - 1];
            for (std::size_t q = 0; q < parents; ++q) {
                const std::int32_t s = pdp[q];
                if (s == kUnset) continue;
                const std::size_t node = q * static_cast<std::size_t>(B) + static_cast<std::size_t>(c);
                dp[node] = s;
                const std::int32_t span = t - s;
                if (span < bs[node]) bs[node] = span;
            }
        }
    }

    FiltrationTable f;
    f.alphabet_size = alphabet_size;
    f.dmax = dmax;
    f.direction = Direction::Sublevel;
    f.face_preserving = true;  // min over all embeddings is monotone under face deletion
    f.allocate();
    for (int k = 0; k <= dmax; ++k)
        for (std::size_t r = 0; r < f.values[k].size(); ++r) {
            const std::int32_t b = best[k + 1][r];
            if (b != std::numeric_limits<std::int32_t>::max() && b <= value_cap)
                f.values[k][r] = ExtendedValue(make_rational(b));
        }
    return f;
}

/// First-occurrence table: one greedy scan matching each tuple element at the
/// first position strictly after the previous match; value = span of that
/// embedding. The greedy span can violate the face inequality (dropping the
/// head symbol may move the start far earlier), so the flag is set from an
/// explicit check rather than assumed.
inline FiltrationTable first_occurrence_table(const Sequence& xi, int dmax, long value_cap,
                                              int alphabet_size = 4) {
    if (xi.codes.empty()) throw InputError("first_occurrence_table: empty sequence");
    detail::TupleTrie trie(alphabet_size, dmax);
    const int B = alphabet_size;

    constexpr std::int32_t kUnset = -1;
    std::vector<std::vector<std::int32_t>> done(trie.max_len + 1), start(trie.max_len + 1);
    for (int l = 1; l <= trie.max_len; ++l) {
        done[l].assign(trie.count[l], kUnset);
        start[l].assign(trie.count[l], kUnset);
    }

    const std::int32_t n = static_cast<std::int32_t>(xi.codes.size());
    for (std::int32_t t = 0; t < n; ++t) {
        const int c = xi.codes[static_cast<std::size_t>(t)];
        for (int l = trie.max_len; l >= 1; --l) {
            if (l == 1) {
                if (done[1][static_cast<std::size_t>(c)] == kUnset) {
                    done[1][static_cast<std::size_t>(c)] = t;
                    start[1][static_cast<std::size_t>(c)] = t;
                }
                continue;
            }
            const std::size_t parents = trie.count[l - 1];
            for (std::size_t q = 0; q < parents; ++q) {
                const std::size_t node = q * static_cast<std::size_t>(B) + static_cast<std::size_t>(c);
                if (done[l][node] != kUnset) continue;
                const std::int32_t pd = done[l - 1][q];
                if (pd == kUnset || pd >= t) continue;
                done[l][node] = t;
                start[l][node] = start[l - 1][q];
            }
        }
    }

    FiltrationTable f;
    f.alphabet_size = alphabet_size;
    f.dmax = dmax;
    f.direction = Direction::Sublevel;
    f.allocate();
    for (int k = 0; k <= dmax; ++k)
        for (std::size_t r = 0; r < f.values[k].size(); ++r) {
            if (done[k + 1][r] == kUnset) continue;
            const std::int32_t span = done[k + 1][r] - start[k + 1][r];
            if (span <= value_cap) f.values[k][r] = ExtendedValue(make_rational(span));
        }
    f.face_preserving = f.check_face_preserving();
    return f;
}

/// Contiguous-occurrence counts of every tuple read as a string, overlaps
/// counted. Not face-preserving; superlevel sets need the Delta-closure.
inline FiltrationTable substring_count_table(const Sequence& xi, int dmax, int alphabet_size = 4) {
    if (xi.codes.empty()) throw InputError("substring_count_table: empty sequence");
    detail::TupleTrie trie(alphabet_size, dmax);
    std::vector<std::vector<std::int64_t>> counts(trie.max_len + 1);
    for (int l = 1; l <= trie.max_len; ++l) counts[l].assign(trie.count[l], 0);

    // window_rank[l] = rank of the last l symbols ending at the current position
    std::vector<std::size_t> window_rank(trie.max_len + 1, 0);
    const std::size_t n = xi.codes.size();
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t c = xi.codes[t];
        for (int l = trie.max_len; l >= 2; --l) window_rank[l] = window_rank[l - 1] * trie.base + c;
        window_rank[1] = c;
        for (int l = 1; l <= trie.max_len; ++l)
            if (t + 1 >= static_cast<std::size_t>(l)) ++counts[l][window_rank[l]];
    }

    FiltrationTable f;
    f.alphabet_size = alphabet_size;
    f.dmax = dmax;
    f.direction = Direction::Superlevel;
    f.face_preserving = false;
    f.allocate();
    for (int k = 0; k <= dmax; ++k)
        for (std::size_t r = 0; r < f.values[k].size(); ++r)
            f.values[k][r] = ExtendedValue(make_rational(counts[k + 1][r]));
    return f;
}

/// Occurrence frequencies: count / path_length, exact.
inline FiltrationTable frequency_table(const Sequence& xi, int dmax, int alphabet_size = 4) {
    if (xi.path_length() < 1)
        throw InputError("frequency_table: sequence '" + xi.id +
                         "' needs at least two elements for the frequency denominator");
    FiltrationTable f = substring_count_table(xi, dmax, alphabet_size);
    const Rational len = make_rational(xi.path_length());
    for (auto& grade : f.values)
        for (auto& v : grade)
            v = ExtendedValue(v.value() / len);
    return f;
}

/// Face-preserving modification. For sublevel tables the value of a cell is
/// raised to the max over the cell and all its iterated faces (bottom-up).
/// For superlevel tables the dual: max over the cell and all its iterated
/// cofaces within dmax (top-down), so that superlevel sets become face-closed
/// and coincide with the Delta-closures of the raw superlevel sets.
inline FiltrationTable face_preserving_modification(const FiltrationTable& f) {
    FiltrationTable out = f;
    const int B = f.alphabet_size;
    if (f.direction == Direction::Sublevel) {
        for (int k = 1; k <= f.dmax; ++k)
            for (std::size_t r = 0; r < out.values[k].size(); ++r) {
                Simplex s = tuple_unrank(r, k + 1, B);
                ExtendedValue v = out.values[k][r];
                for (int i = 0; i <= k; ++i)
                    v = max(v, out.values[k - 1][tuple_rank(face(s, i), B)]);
                out.values[k][r] = v;
            }
    } else {
        for (int k = f.dmax - 1; k >= 0; --k)
            for (std::size_t r = 0; r < out.values[k].size(); ++r) {
                Simplex s = tuple_unrank(r, k + 1, B);
                ExtendedValue v = out.values[k][r];
                // immediate cofaces: insert one symbol at any position
                for (int pos = 0; pos <= k + 1; ++pos)
                    for (int c = 0; c < B; ++c) {
                        Simplex t;
                        t.reserve(s.size() + 1);
                        t.insert(t.end(), s.begin(), s.begin() + pos);
                        t.push_back(static_cast<std::uint8_t>(c));
                        t.insert(t.end(), s.begin() + pos, s.end());
                        v = max(v, out.values[k + 1][tuple_rank(t, B)]);
                    }
                out.values[k][r] = v;
            }
    }
    out.face_preserving = true;
    return out;
}

// ---------------------------------------------------------------------------
// Filtered complexes

/// A cell of a filtered complex. `boundary` references strictly earlier cells
/// with exact integer coefficients (repeated faces accumulate signs).
struct FilteredCell {
    int dim = 0;
    Rational value;  // native threshold at which the cell enters
    std::string name;
    std::vector<std::pair<std::uint32_t, int>> boundary;
};

/// Cells in internal filtration order: native value ascending for sublevel
/// sources, descending for superlevel ones, then dimension, then name. Every
/// prefix is a valid Delta-complex.
struct FilteredComplex {
    bool decreasing = false;
    std::vector<FilteredCell> cells;
    std::vector<Rational> grid;  // distinct native values, ascending

    /// Number of leading cells present at native parameter a.
    std::size_t prefix_size(const Rational& a) const {
        std::size_t n = 0;
        for (const auto& c : cells) {
            const bool in = decreasing ? (c.value >= a) : (c.value <= a);
            if (!in) break;
            ++n;
        }
        return n;
    }

    std::size_t count_dim(int dim, std::size_t prefix) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < prefix; ++i)
            if (cells[i].dim == dim) ++n;
        return n;
    }

    /// Dense boundary matrix of grade n restricted to a prefix, over T.
    /// Rows/columns are (n-1)/n-cells in filtration order.
    template <class T>
    FieldMatrix<T> prefix_boundary_dense(int n, std::size_t prefix) const {
        std::vector<std::uint32_t> row_of(cells.size(), 0);
        std::size_t rows = 0, cols = 0;
        for (std::size_t i = 0; i < prefix; ++i) {
            if (cells[i].dim == n - 1) row_of[i] = static_cast<std::uint32_t>(rows++);
            if (cells[i].dim == n) ++cols;
        }
        FieldMatrix<T> m(rows, std::vector<T>(cols, fld::from_int<T>(0)));
        std::size_t j = 0;
        for (std::size_t i = 0; i < prefix; ++i) {
            if (cells[i].dim != n) continue;
            for (const auto& [fi, coeff] : cells[i].boundary)
                m[row_of[fi]][j] += fld::from_int<T>(coeff);
            ++j;
        }
        return m;
    }

    /// Betti number of the complex at native parameter a.
    template <class T>
    long betti_at(int n, const Rational& a) const {
        const std::size_t p = prefix_size(a);
        const long cn = static_cast<long>(count_dim(n, p));
        if (cn == 0) return 0;
        long rank_n = 0, rank_np1 = 0;
        if (n >= 1 && count_dim(n - 1, p) > 0) rank_n = field_rank(prefix_boundary_dense<T>(n, p));
        if (count_dim(n + 1, p) > 0) rank_np1 = field_rank(prefix_boundary_dense<T>(n + 1, p));
        return cn - rank_n - rank_np1;
    }

    long betti_at(int n, const Rational& a, FieldTag field) const {
        return field == FieldTag::GF2 ? betti_at<GF2>(n, a) : betti_at<Rational>(n, a);
    }
};

namespace detail {

struct TaggedCell {
    Rational value;
    int dim;
    std::size_t rank;
};

inline FilteredComplex assemble_filtered(std::vector<TaggedCell> cells, int alphabet_size,
                                         bool decreasing, const Alphabet* names) {
    std::sort(cells.begin(), cells.end(), [&](const TaggedCell& a, const TaggedCell& b) {
        if (a.value != b.value) return decreasing ? (b.value < a.value) : (a.value < b.value);
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.rank < b.rank;
    });

    FilteredComplex out;
    out.decreasing = decreasing;
    out.cells.reserve(cells.size());
    std::map<std::pair<int, std::size_t>, std::uint32_t> index;
    for (const TaggedCell& c : cells) {
        FilteredCell fc;
        fc.dim = c.dim;
        fc.value = c.value;
        Simplex s = tuple_unrank(c.rank, c.dim + 1, alphabet_size);
        fc.name = names ? simplex_name(s, *names) : residue_name(s);
        if (c.dim > 0) {
            std::map<std::uint32_t, int> acc;
            for (int i = 0; i <= c.dim; ++i) {
                const std::size_t fr = tuple_rank(face(s, i), alphabet_size);
                auto it = index.find({c.dim - 1, fr});
                if (it == index.end())
                    throw InternalError("filtered complex: face " +
                                        (names ? simplex_name(face(s, i), *names)
                                               : residue_name(face(s, i))) +
                                        " of " + fc.name + " missing or later than its coface");
                acc[it->second] += (i % 2 == 0) ? 1 : -1;
            }
            for (const auto& [fi, coeff] : acc)
                if (coeff != 0) fc.boundary.emplace_back(fi, coeff);
        }
        index[{c.dim, c.rank}] = static_cast<std::uint32_t>(out.cells.size());
        out.cells.push_back(std::move(fc));
    }

    std::vector<Rational> grid;
    for (const auto& c : out.cells) grid.push_back(c.value);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    out.grid = std::move(grid);
    return out;
}

}  // namespace detail

/// Sublevel filtration of a face-preserving table: finite-valued cells sorted
/// by (value, dim, lex tuple).
inline FilteredComplex sublevel_filtered_complex(const FiltrationTable& f,
                                                 const Alphabet* names = nullptr) {
    if (f.direction != Direction::Sublevel || !f.face_preserving)
        throw ConfigError(
            "sublevel filtration needs a face-preserving sublevel table; apply "
            "face_preserving_modification or use the superlevel Delta-closure route");
    std::vector<detail::TaggedCell> cells;
    for (int k = 0; k <= f.dmax; ++k)
        for (std::size_t r = 0; r < f.values[k].size(); ++r)
            if (f.values[k][r].is_finite())
                cells.push_back({f.values[k][r].value(), k, r});
    return detail::assemble_filtered(std::move(cells), f.alphabet_size, false, names);
}

/// Superlevel filtration via explicit Delta-closures: the complex at
/// parameter a is the closure of {s : f(s) >= a}, and the entry value of a
/// cell is the first (largest) threshold whose closure contains it. The
/// result is consumed as an increasing filtration internally (decreasing
/// native parameter). The table must be finite: count and frequency
/// functions always are, and a +inf cell would have no first threshold.
inline FilteredComplex superlevel_filtered_complex(const FiltrationTable& f,
                                                   const Alphabet* names = nullptr) {
    std::vector<Rational> thresholds;
    for (const auto& grade : f.values)
        for (const auto& v : grade) {
            if (v.is_infinite())
                throw InputError("superlevel filtration: table contains +inf values");
            thresholds.push_back(v.value());
        }
    if (thresholds.empty()) throw InputError("superlevel filtration: empty table");
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    const int B = f.alphabet_size;
    std::vector<std::vector<char>> present(f.dmax + 1);
    for (int k = 0; k <= f.dmax; ++k) present[k].assign(f.values[k].size(), 0);

    std::vector<detail::TaggedCell> cells;
    std::vector<Simplex> stack;
    for (const Rational& a : thresholds) {
        stack.clear();
        for (int k = 0; k <= f.dmax; ++k)
            for (std::size_t r = 0; r < f.values[k].size(); ++r) {
                if (present[k][r]) continue;
                if (f.values[k][r].value() >= a) stack.push_back(tuple_unrank(r, k + 1, B));
            }
        while (!stack.empty()) {
            Simplex s = std::move(stack.back());
            stack.pop_back();
            const int k = simplex_dim(s);
            const std::size_t r = tuple_rank(s, B);
            if (present[k][r]) continue;
            present[k][r] = 1;
            cells.push_back({a, k, r});
            if (k >= 1)
                for (int i = 0; i <= k; ++i) stack.push_back(face(s, i));
        }
    }
    return detail::assemble_filtered(std::move(cells), B, true, names);
}

// ---------------------------------------------------------------------------
// CSV interchange: "tuple,value" with exact rationals and "inf".

inline std::string table_to_csv(const FiltrationTable& f, const Alphabet& a) {
    std::string out = "tuple,value\n";
    for (int k = 0; k <= f.dmax; ++k)
        for (std::size_t r = 0; r < f.values[k].size(); ++r)
            out += simplex_name(tuple_unrank(r, k + 1, f.alphabet_size), a) + "," +
                   f.values[k][r].str() + "\n";
    return out;
}

inline FiltrationTable table_from_csv(std::istream& in, const Alphabet& a, Direction direction) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("table CSV: empty input");
    std::map<Simplex, ExtendedValue> entries;
    int dmax = -1;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InputError("table CSV: missing comma at line " + std::to_string(line_no));
        Simplex s;
        for (char c : line.substr(0, comma)) {
            int code = a.code_of(c);
            if (code < 0)
                throw InputError("table CSV: unknown symbol '" + std::string(1, c) + "' at line " +
                                 std::to_string(line_no));
            s.push_back(static_cast<std::uint8_t>(code));
        }
        if (s.empty()) throw InputError("table CSV: empty tuple at line " + std::to_string(line_no));
        dmax = std::max(dmax, simplex_dim(s));
        entries[s] = extended_from_string(line.substr(comma + 1));
    }
    if (dmax < 0) throw InputError("table CSV: no entries");

    FiltrationTable f;
    f.alphabet_size = a.size();
    f.dmax = dmax;
    f.direction = direction;
    f.allocate();
    std::size_t expected = 0;
    for (int k = 0; k <= dmax; ++k) expected += tuple_count(k + 1, a.size());
    if (entries.size() != expected)
        throw InputError("table CSV: expected " + std::to_string(expected) + " entries covering all tuples up to length " +
                         std::to_string(dmax + 1) + ", got " + std::to_string(entries.size()));
    for (const auto& [s, v] : entries) f.at(s) = v;
    f.face_preserving = f.check_face_preserving();
    return f;
}

}  // namespace seqtopo
