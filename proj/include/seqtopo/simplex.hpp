#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqtopo/alphabet.hpp"

namespace seqtopo {

/// A simplex is an (n+1)-tuple of alphabet codes, repeats allowed. Equality
/// is elementwise tuple equality; there is no vertex-set collapsing.
using Simplex = std::vector<std::uint8_t>;

inline int simplex_dim(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

/// d_i: delete position i. Defined for 0 <= i <= dim and dim >= 1.
inline Simplex face(const Simplex& s, int i) {
    if (s.size() < 2) throw std::invalid_argument("face of a vertex");
    if (i < 0 || i >= static_cast<int>(s.size()))
        throw std::invalid_argument("face index out of range");
    Simplex out;
    out.reserve(s.size() - 1);
    for (int j = 0; j < static_cast<int>(s.size()); ++j)
        if (j != i) out.push_back(s[j]);
    return out;
}

/// Lexicographic rank of a tuple among all tuples of its length over an
/// alphabet of `base` symbols (big-endian positional encoding).
inline std::size_t tuple_rank(const Simplex& s, int base) {
    std::size_t r = 0;
    for (auto c : s) r = r * static_cast<std::size_t>(base) + c;
    return r;
}

inline Simplex tuple_unrank(std::size_t rank, int len, int base) {
    Simplex s(static_cast<std::size_t>(len));
    for (int i = len - 1; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rank % static_cast<std::size_t>(base));
        rank /= static_cast<std::size_t>(base);
    }
    return s;
}

inline std::size_t tuple_count(int len, int base) {
    std::size_t n = 1;
    for (int i = 0; i < len; ++i) n *= static_cast<std::size_t>(base);
    return n;
}

inline std::string simplex_name(const Simplex& s, const Alphabet& a) {
    std::string out;
    out.reserve(s.size());
    for (auto c : s) out.push_back(a.symbol(c));
    return out;
}

/// Residue-tuple spelling ("032") used for quotient cells.
inline std::string residue_name(const Simplex& s) {
    std::string out;
    out.reserve(s.size());
    for (auto c : s) out.push_back(static_cast<char>('0' + c));
    return out;
}

/// Smallest face-closed set containing S: S plus all iterated faces.
inline std::set<Simplex> delta_closure(const std::set<Simplex>& s) {
    std::set<Simplex> closed;
    std::vector<Simplex> stack(s.begin(), s.end());
    while (!stack.empty()) {
        Simplex cur = std::move(stack.back());
        stack.pop_back();
        if (!closed.insert(cur).second) continue;
        if (cur.size() >= 2)
            for (int i = 0; i <= simplex_dim(cur); ++i) stack.push_back(face(cur, i));
    }
    return closed;
}

}  // namespace seqtopo
