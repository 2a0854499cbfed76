#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "seqtopo/errors.hpp"
#include "seqtopo/field.hpp"
#include "seqtopo/linalg.hpp"
#include "seqtopo/simplex.hpp"

namespace seqtopo {

/// A finite Delta-complex: graded cells, each n-cell carrying its n+1 face
/// indices into the grade below. Cells may be tuple-based or abstract.
class DeltaComplex {
public:
    struct Cell {
        std::string name;
        std::vector<std::uint32_t> faces;  // empty for vertices
    };

    std::uint32_t add_cell(int dim, std::string name, std::vector<std::uint32_t> faces = {}) {
        if (dim < 0) throw InternalError("negative cell dimension");
        if (dim == 0 && !faces.empty())
            throw InternalError("vertex with faces: " + name);
        if (dim > 0) {
            if (static_cast<int>(faces.size()) != dim + 1)
                throw InternalError("cell " + name + " needs " + std::to_string(dim + 1) +
                                    " faces, got " + std::to_string(faces.size()));
            for (auto f : faces)
                if (f >= size(dim - 1))
                    throw InternalError("cell " + name + " references missing face");
        }
        if (grades_.size() <= static_cast<std::size_t>(dim)) grades_.resize(dim + 1);
        grades_[dim].push_back(Cell{std::move(name), std::move(faces)});
        return static_cast<std::uint32_t>(grades_[dim].size() - 1);
    }

    int max_dim() const { return static_cast<int>(grades_.size()) - 1; }
    std::uint32_t size(int dim) const {
        if (dim < 0 || dim > max_dim()) return 0;
        return static_cast<std::uint32_t>(grades_[dim].size());
    }
    const Cell& cell(int dim, std::uint32_t i) const { return grades_[dim][i]; }

    /// Sparse boundary columns of grade n over the given scalar: column j
    /// accumulates sum_i (-1)^i [row of face i of cell j]. Repeated faces
    /// cancel or accumulate exactly.
    template <class T>
    std::vector<std::map<std::uint32_t, T>> boundary_columns(int n) const {
        if (n < 1 || n > max_dim())
            throw InternalError("boundary grade out of range: " + std::to_string(n));
        std::vector<std::map<std::uint32_t, T>> cols;
        cols.reserve(grades_[n].size());
        for (const Cell& c : grades_[n]) {
            std::map<std::uint32_t, T> col;
            for (std::size_t i = 0; i < c.faces.size(); ++i) {
                const T term = fld::from_int<T>(i % 2 == 0 ? 1 : -1);
                auto [it, fresh] = col.emplace(c.faces[i], term);
                if (!fresh) it->second += term;
            }
            std::erase_if(col, [](const auto& kv) { return fld::is_zero(kv.second); });
            cols.push_back(std::move(col));
        }
        return cols;
    }

    template <class T>
    FieldMatrix<T> boundary_dense(int n) const {
        FieldMatrix<T> m(size(n - 1), std::vector<T>(size(n), fld::from_int<T>(0)));
        auto cols = boundary_columns<T>(n);
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [row, v] : cols[j]) m[row][j] = v;
        return m;
    }

    template <class T>
    int boundary_rank(int n) const {
        if (n < 1 || n > max_dim() || size(n) == 0 || size(n - 1) == 0) return 0;
        return field_rank(boundary_dense<T>(n));
    }

    template <class T>
    long betti_t(int n) const {
        if (n < 0 || n > max_dim() || size(n) == 0) return 0;
        const long kernel = static_cast<long>(size(n)) - boundary_rank<T>(n);
        return kernel - boundary_rank<T>(n + 1);
    }

    long betti(int n, FieldTag field) const {
        return field == FieldTag::GF2 ? betti_t<GF2>(n) : betti_t<Rational>(n);
    }

    long euler_characteristic() const {
        long chi = 0;
        for (int n = 0; n <= max_dim(); ++n)
            chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(size(n));
        return chi;
    }

    /// Debug dump: one JSON object per grade, {"dim": n, "simplices": [...]}.
    std::string to_json() const {
        std::string out = "[";
        for (int n = 0; n <= max_dim(); ++n) {
            if (n) out += ",";
            out += "{\"dim\":" + std::to_string(n) + ",\"simplices\":[";
            for (std::uint32_t i = 0; i < size(n); ++i) {
                if (i) out += ",";
                out += "\"" + grades_[n][i].name + "\"";
            }
            out += "]}";
        }
        out += "]";
        return out;
    }

private:
    std::vector<std::vector<Cell>> grades_;
};

/// Builds the Delta-complex spanned by a face-closed tuple set. Cells are
/// ordered lexicographically within each grade.
inline DeltaComplex complex_from_tuples(const std::set<Simplex>& closed, int alphabet_size,
                                        const Alphabet* names = nullptr) {
    std::map<int, std::vector<Simplex>> by_dim;
    for (const Simplex& s : closed) by_dim[simplex_dim(s)].push_back(s);

    DeltaComplex k;
    std::map<int, std::map<std::size_t, std::uint32_t>> index;  // dim -> rank -> cell id
    for (auto& [dim, cells] : by_dim) {
        std::sort(cells.begin(), cells.end());
        for (const Simplex& s : cells) {
            std::vector<std::uint32_t> faces;
            if (dim > 0) {
                faces.reserve(dim + 1);
                for (int i = 0; i <= dim; ++i) {
                    Simplex f = face(s, i);
                    auto it = index[dim - 1].find(tuple_rank(f, alphabet_size));
                    if (it == index[dim - 1].end())
                        throw InternalError("tuple set is not face-closed at " +
                                            residue_name(f));
                    faces.push_back(it->second);
                }
            }
            std::string nm = names ? simplex_name(s, *names) : residue_name(s);
            std::uint32_t id = k.add_cell(dim, std::move(nm), std::move(faces));
            index[dim][tuple_rank(s, alphabet_size)] = id;
        }
    }
    return k;
}

/// The full tuple complex on `alphabet_size` symbols through dimension dmax.
inline DeltaComplex full_tuple_complex(int alphabet_size, int dmax, const Alphabet* names = nullptr) {
    std::set<Simplex> all;
    for (int len = 1; len <= dmax + 1; ++len)
        for (std::size_t r = 0; r < tuple_count(len, alphabet_size); ++r)
            all.insert(tuple_unrank(r, len, alphabet_size));
    return complex_from_tuples(all, alphabet_size, names);
}

}  // namespace seqtopo
