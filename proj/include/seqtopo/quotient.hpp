#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "seqtopo/alphabet.hpp"
#include "seqtopo/delta_complex.hpp"
#include "seqtopo/errors.hpp"
#include "seqtopo/filtration.hpp"
#include "seqtopo/simplex.hpp"

namespace seqtopo {

/// Z/m acting diagonally on residue tuples by translation. Carries the
/// symbol <-> residue bijection used to read sequence-derived tables.
struct CyclicGroupStructure {
    int modulus;
    std::vector<int> residue_of_code;  // alphabet code -> residue
    std::vector<int> code_of_residue;  // residue -> alphabet code

    CyclicGroupStructure(int m, std::vector<int> res_of_code)
        : modulus(m), residue_of_code(std::move(res_of_code)) {
        if (static_cast<int>(residue_of_code.size()) != m)
            throw ConfigError("group structure needs one residue per symbol");
        code_of_residue.assign(m, -1);
        for (int c = 0; c < m; ++c) {
            int r = residue_of_code[c];
            if (r < 0 || r >= m || code_of_residue[r] != -1)
                throw ConfigError("symbol/residue map must be a bijection");
            code_of_residue[r] = c;
        }
    }

    /// DNA default: A->0, C->1, T->2, G->3 on the ACGT alphabet.
    static const CyclicGroupStructure& dna() {
        static const CyclicGroupStructure g(4, {0, 1, 3, 2});
        return g;
    }
};

/// Canonical orbit representative: translate so the first entry is 0.
inline Simplex canonical_rep(const Simplex& t, int m) {
    Simplex out(t.size());
    const int shift = t[0];
    for (std::size_t i = 0; i < t.size(); ++i)
        out[i] = static_cast<std::uint8_t>(((t[i] - shift) % m + m) % m);
    return out;
}

/// Face map on the quotient: delete position i, then re-canonicalize.
inline Simplex quotient_face(const Simplex& rep, int i, int m) {
    return canonical_rep(face(rep, i), m);
}

/// Orbit-averaged values on the quotient: one entry per canonical
/// representative, averaging the source table over all m translates; +inf
/// absorbs. Indexed by tuple_rank of the representative (leading residue 0).
struct QuotientTable {
    int modulus = 4;
    int dmax = 3;
    bool face_preserving = false;
    std::vector<std::vector<ExtendedValue>> values;  // [k][rank of rep]

    const ExtendedValue& at(const Simplex& rep) const {
        return values[simplex_dim(rep)][tuple_rank(rep, modulus)];
    }
};

/// The averaged table on the quotient; requires alphabet size == group order.
/// Averaging any orbit member gives the same value, since translates of a
/// translate run over the same orbit.
inline QuotientTable orbit_average_table(const FiltrationTable& f, const CyclicGroupStructure& g) {
    if (f.alphabet_size != g.modulus)
        throw ConfigError("orbit averaging needs alphabet size == group order");
    const int m = g.modulus;
    QuotientTable q;
    q.modulus = m;
    q.dmax = f.dmax;
    q.values.assign(f.dmax + 1, {});
    for (int k = 0; k <= f.dmax; ++k) {
        q.values[k].assign(tuple_count(k + 1, m), ExtendedValue::infinity());
        for (std::size_t r = 0; r < q.values[k].size(); ++r) {
            Simplex rep = tuple_unrank(r, k + 1, m);
            if (rep[0] != 0) continue;  // only canonical representatives
            ExtendedValue total(make_rational(0));
            Simplex word(rep.size());
            for (int shift = 0; shift < m && total.is_finite(); ++shift) {
                for (std::size_t i = 0; i < rep.size(); ++i)
                    word[i] = static_cast<std::uint8_t>(g.code_of_residue[(rep[i] + shift) % m]);
                total = total + f.at(word);
            }
            q.values[k][r] = total / m;
        }
    }
    q.face_preserving = f.face_preserving && f.direction == Direction::Sublevel;
    return q;
}

/// Sublevel filtered complex on the quotient. Boundary coefficients come from
/// the alternating sum over quotient faces and can exceed +-1 when distinct
/// faces canonicalize to the same representative.
inline FilteredComplex quotient_sublevel_filtered_complex(const QuotientTable& q) {
    const int m = q.modulus;
    struct Entry {
        Rational value;
        int dim;
        std::size_t rank;
    };
    std::vector<Entry> entries;
    for (int k = 0; k <= q.dmax; ++k)
        for (std::size_t r = 0; r < q.values[k].size(); ++r) {
            Simplex rep = tuple_unrank(r, k + 1, m);
            if (rep[0] != 0 || q.values[k][r].is_infinite()) continue;
            entries.push_back({q.values[k][r].value(), k, r});
        }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.rank < b.rank;
    });

    FilteredComplex out;
    out.decreasing = false;
    std::map<std::pair<int, std::size_t>, std::uint32_t> index;
    for (const Entry& e : entries) {
        Simplex rep = tuple_unrank(e.rank, e.dim + 1, m);
        FilteredCell fc;
        fc.dim = e.dim;
        fc.value = e.value;
        fc.name = residue_name(rep);
        if (e.dim > 0) {
            std::map<std::uint32_t, int> acc;
            for (int i = 0; i <= e.dim; ++i) {
                Simplex qf = quotient_face(rep, i, m);
                auto it = index.find({e.dim - 1, tuple_rank(qf, m)});
                if (it == index.end())
                    throw InternalError("quotient filtration: face " + residue_name(qf) +
                                        " of " + fc.name + " missing (table not face-preserving?)");
                acc[it->second] += (i % 2 == 0) ? 1 : -1;
            }
            for (const auto& [fi, coeff] : acc)
                if (coeff != 0) fc.boundary.emplace_back(fi, coeff);
        }
        index[{e.dim, e.rank}] = static_cast<std::uint32_t>(out.cells.size());
        out.cells.push_back(std::move(fc));
    }
    for (const auto& c : out.cells) out.grid.push_back(c.value);
    std::sort(out.grid.begin(), out.grid.end());
    out.grid.erase(std::unique(out.grid.begin(), out.grid.end()), out.grid.end());
    return out;
}

/// Full quotient complex of Z/m through dimension dmax (constant filtration).
/// Grade n holds m^n canonical representatives.
inline DeltaComplex full_quotient_complex(int m, int dmax) {
    DeltaComplex k;
    std::map<std::pair<int, std::size_t>, std::uint32_t> index;
    for (int dim = 0; dim <= dmax; ++dim) {
        for (std::size_t r = 0; r < tuple_count(dim + 1, m); ++r) {
            Simplex rep = tuple_unrank(r, dim + 1, m);
            if (rep[0] != 0) continue;
            std::vector<std::uint32_t> faces;
            if (dim > 0) {
                faces.reserve(dim + 1);
                for (int i = 0; i <= dim; ++i) {
                    Simplex qf = quotient_face(rep, i, m);
                    faces.push_back(index.at({dim - 1, tuple_rank(qf, m)}));
                }
            }
            index[{dim, r}] = k.add_cell(dim, residue_name(rep), std::move(faces));
        }
    }
    return k;
}

}  // namespace seqtopo
