#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "seqtopo/field.hpp"

namespace seqtopo {

/// Dense row-major matrix over an exact field scalar.
template <class T>
using FieldMatrix = std::vector<std::vector<T>>;

/// Rank by Gaussian elimination. The argument is consumed.
template <class T>
int field_rank(FieldMatrix<T> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    int r = 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!fld::is_zero(m[i][c])) { pivot = i; break; }
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        const T inv = fld::inverse(m[r][c]);
        for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == static_cast<std::size_t>(r) || fld::is_zero(m[i][c])) continue;
            const T f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Basis of {x : m x = 0} for an r x c matrix; each basis vector has length c.
/// Exact Gauss-Jordan; free columns parameterize the kernel.
template <class T>
std::vector<std::vector<T>> field_nullspace(FieldMatrix<T> m, std::size_t cols) {
    const std::size_t rows = m.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!fld::is_zero(m[i][c])) { pivot = i; break; }
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        const T inv = fld::inverse(m[r][c]);
        for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || fld::is_zero(m[i][c])) continue;
            const T f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<T>> basis;
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<T> v(cols, fld::from_int<T>(0));
        v[fc] = fld::from_int<T>(1);
        for (std::size_t pr = 0; pr < pivot_col.size(); ++pr)
            v[pivot_col[pr]] = -m[pr][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Incremental echelon of a growing family of vectors with combination
/// bookkeeping: membership tests also return the expressing combination.
template <class T>
class SpanSolver {
public:
    explicit SpanSolver(std::size_t dimension) : dim_(dimension) {}

    std::size_t size() const { return rows_.size(); }

    /// Adds `v` tagged `id`. Returns false when v was already in the span.
    bool add(std::vector<T> v, std::uint32_t id) {
        Combo combo;
        combo[id] = fld::from_int<T>(1);
        if (!reduce(v, combo)) return false;
        insert(std::move(v), std::move(combo));
        return true;
    }

    /// If `target` lies in the current span, returns coefficients {id -> c}
    /// with target = sum c * v_id.
    std::optional<std::map<std::uint32_t, T>> solve(std::vector<T> target) const {
        Combo combo;
        if (reduce(target, combo)) return std::nullopt;
        for (auto& [id, c] : combo) c = -c;
        std::map<std::uint32_t, T> out;
        for (auto& [id, c] : combo)
            if (!fld::is_zero(c)) out.emplace(id, c);
        return out;
    }

    bool contains(std::vector<T> target) const {
        Combo combo;
        return !reduce(target, combo);
    }

private:
    using Combo = std::map<std::uint32_t, T>;
    struct Row {
        std::size_t pivot;
        std::vector<T> vec;   // normalized so vec[pivot] == 1
        Combo combo;          // vec expressed in added vectors
    };

    // Reduces v in place against the echelon; accumulates the subtraction
    // combination into `combo`. Returns true when a nonzero residual remains.
    bool reduce(std::vector<T>& v, Combo& combo) const {
        for (const Row& row : rows_) {
            if (fld::is_zero(v[row.pivot])) continue;
            const T f = v[row.pivot];
            for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * row.vec[j];
            for (const auto& [id, c] : row.combo) {
                auto it = combo.find(id);
                if (it == combo.end()) combo.emplace(id, -(f * c));
                else it->second -= f * c;
            }
        }
        for (std::size_t j = 0; j < dim_; ++j)
            if (!fld::is_zero(v[j])) return true;
        return false;
    }

    void insert(std::vector<T> v, Combo combo) {
        std::size_t p = 0;
        while (fld::is_zero(v[p])) ++p;
        const T inv = fld::inverse(v[p]);
        for (auto& x : v) x = x * inv;
        for (auto& [id, c] : combo) c = c * inv;
        rows_.push_back(Row{p, std::move(v), std::move(combo)});
    }

    std::size_t dim_;
    std::vector<Row> rows_;
};

}  // namespace seqtopo
