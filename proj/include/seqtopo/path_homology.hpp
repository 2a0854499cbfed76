#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "seqtopo/errors.hpp"
#include "seqtopo/field.hpp"
#include "seqtopo/filtration.hpp"
#include "seqtopo/linalg.hpp"
#include "seqtopo/persistence.hpp"

namespace seqtopo {

/// Graded family of allowed tuples, closed under dropping the first or last
/// element. Superlevel sets of occurrence-count tables have this property
/// because every occurrence of a word contains occurrences of both
/// truncations.
struct PathComplex {
    int alphabet_size = 4;
    int dmax = 3;
    std::vector<std::vector<char>> allowed;  // [k][rank]

    bool is_allowed(const Simplex& s) const {
        return allowed[simplex_dim(s)][tuple_rank(s, alphabet_size)] != 0;
    }

    std::size_t count(int k) const {
        std::size_t n = 0;
        for (char c : allowed[k]) n += c != 0;
        return n;
    }

    /// Front/back truncation closure check.
    bool check_closure() const {
        for (int k = 1; k <= dmax; ++k)
            for (std::size_t r = 0; r < allowed[k].size(); ++r) {
                if (!allowed[k][r]) continue;
                Simplex s = tuple_unrank(r, k + 1, alphabet_size);
                Simplex front(s.begin(), s.end() - 1);
                Simplex back(s.begin() + 1, s.end());
                if (!allowed[k - 1][tuple_rank(front, alphabet_size)] ||
                    !allowed[k - 1][tuple_rank(back, alphabet_size)])
                    return false;
            }
        return true;
    }
};

namespace detail {

inline PathComplex path_complex_at(const FiltrationTable& f, const Rational& a) {
    PathComplex p;
    p.alphabet_size = f.alphabet_size;
    p.dmax = f.dmax;
    p.allowed.assign(f.dmax + 1, {});
    for (int k = 0; k <= f.dmax; ++k) {
        p.allowed[k].assign(f.values[k].size(), 0);
        for (std::size_t r = 0; r < f.values[k].size(); ++r) {
            const ExtendedValue& v = f.values[k][r];
            if (v.is_infinite() || v.value() >= a) p.allowed[k][r] = 1;
        }
    }
    return p;
}

}  // namespace detail

/// P_n = {tuples s of dim n : f(s) >= a} for a count or frequency table and a
/// positive threshold. The a <= 0 case is rejected; the everything-allowed
/// endpoint is handled inside the persistence tower instead.
inline PathComplex superlevel_path_complex(const FiltrationTable& f, const Rational& a) {
    if (f.direction != Direction::Superlevel)
        throw ConfigError("path complexes come from superlevel count/frequency tables");
    if (a <= 0) throw ConfigError("path complex threshold must be positive");
    return detail::path_complex_at(f, a);
}

/// The Omega chain complex of a path complex: per grade, a basis of
/// {u in span(P_n) : boundary(u) in span(P_{n-1})}, with induced boundary
/// matrices between consecutive bases.
template <class T>
struct OmegaChain {
    int alphabet_size = 4;
    int dmax = 3;
    // basis[n][i]: dense coordinates over all tuples of length n+1
    std::vector<std::vector<std::vector<T>>> basis;
    // boundary[n]: rows = basis[n-1] size, cols = basis[n] size (n >= 1)
    std::vector<FieldMatrix<T>> boundary;
};

namespace detail {

/// Word boundary as dense coordinates over tuples of length n.
template <class T>
void accumulate_word_boundary(const Simplex& s, const T& coeff, int base, std::vector<T>& out) {
    for (int i = 0; i <= simplex_dim(s); ++i) {
        const T term = coeff * fld::from_int<T>(i % 2 == 0 ? 1 : -1);
        out[tuple_rank(face(s, i), base)] += term;
    }
}

template <class T>
std::vector<T> chain_boundary(const std::vector<T>& coords, int len, int base) {
    std::vector<T> out(tuple_count(len - 1, base), fld::from_int<T>(0));
    for (std::size_t r = 0; r < coords.size(); ++r) {
        if (fld::is_zero(coords[r])) continue;
        accumulate_word_boundary(tuple_unrank(r, len, base), coords[r], base, out);
    }
    return out;
}

/// Basis of Omega_n for one path complex grade: kernel of the projection of
/// the boundary onto disallowed (n-1)-tuples, restricted to allowed n-tuples.
template <class T>
std::vector<std::vector<T>> omega_basis(const PathComplex& p, int n) {
    const int B = p.alphabet_size;
    std::vector<std::size_t> vars;
    for (std::size_t r = 0; r < p.allowed[n].size(); ++r)
        if (p.allowed[n][r]) vars.push_back(r);
    std::vector<std::vector<T>> out;
    if (vars.empty()) return out;
    if (n == 0) {
        for (auto r : vars) {
            std::vector<T> v(tuple_count(1, B), fld::from_int<T>(0));
            v[r] = fld::from_int<T>(1);
            out.push_back(std::move(v));
        }
        return out;
    }
    std::vector<std::size_t> banned;
    for (std::size_t r = 0; r < p.allowed[n - 1].size(); ++r)
        if (!p.allowed[n - 1][r]) banned.push_back(r);

    std::vector<std::vector<T>> kernel;
    if (banned.empty()) {
        for (std::size_t j = 0; j < vars.size(); ++j) {
            std::vector<T> e(vars.size(), fld::from_int<T>(0));
            e[j] = fld::from_int<T>(1);
            kernel.push_back(std::move(e));
        }
    } else {
        std::vector<std::size_t> banned_row(tuple_count(n, B), SIZE_MAX);
        for (std::size_t i = 0; i < banned.size(); ++i) banned_row[banned[i]] = i;
        FieldMatrix<T> m(banned.size(), std::vector<T>(vars.size(), fld::from_int<T>(0)));
        for (std::size_t j = 0; j < vars.size(); ++j) {
            Simplex s = tuple_unrank(vars[j], n + 1, B);
            for (int i = 0; i <= n; ++i) {
                const std::size_t fr = tuple_rank(face(s, i), B);
                if (banned_row[fr] == SIZE_MAX) continue;
                m[banned_row[fr]][j] += fld::from_int<T>(i % 2 == 0 ? 1 : -1);
            }
        }
        kernel = field_nullspace(std::move(m), vars.size());
    }
    for (const auto& kv : kernel) {
        std::vector<T> v(tuple_count(n + 1, B), fld::from_int<T>(0));
        for (std::size_t j = 0; j < vars.size(); ++j) v[vars[j]] = kv[j];
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace detail

template <class T>
OmegaChain<T> omega_complex_t(const PathComplex& p) {
    OmegaChain<T> chain;
    chain.alphabet_size = p.alphabet_size;
    chain.dmax = p.dmax;
    chain.basis.resize(p.dmax + 1);
    chain.boundary.resize(p.dmax + 1);
    std::vector<SpanSolver<T>> solvers;
    for (int n = 0; n <= p.dmax; ++n)
        solvers.emplace_back(tuple_count(n + 1, p.alphabet_size));

    for (int n = 0; n <= p.dmax; ++n) {
        chain.basis[n] = detail::omega_basis<T>(p, n);
        for (std::size_t i = 0; i < chain.basis[n].size(); ++i)
            solvers[n].add(chain.basis[n][i], static_cast<std::uint32_t>(i));
        if (n == 0) continue;
        FieldMatrix<T> bd(chain.basis[n - 1].size(),
                          std::vector<T>(chain.basis[n].size(), fld::from_int<T>(0)));
        for (std::size_t j = 0; j < chain.basis[n].size(); ++j) {
            auto db = detail::chain_boundary(chain.basis[n][j], n + 1, p.alphabet_size);
            auto combo = solvers[n - 1].solve(std::move(db));
            if (!combo)
                throw InternalError("omega chain: boundary escapes the lower grade");
            for (const auto& [i, c] : *combo) bd[i][j] = c;
        }
        chain.boundary[n] = std::move(bd);
    }
    return chain;
}

template <class T>
long path_betti_t(const PathComplex& p, int n) {
    if (n < 0 || n > p.dmax) return 0;
    OmegaChain<T> chain = omega_complex_t<T>(p);
    const long dim_n = static_cast<long>(chain.basis[n].size());
    if (dim_n == 0) return 0;
    long rank_n = 0, rank_np1 = 0;
    if (n >= 1 && !chain.boundary[n].empty()) rank_n = field_rank(chain.boundary[n]);
    if (n + 1 <= p.dmax && !chain.boundary[n + 1].empty())
        rank_np1 = field_rank(chain.boundary[n + 1]);
    return dim_n - rank_n - rank_np1;
}

inline long path_betti(const PathComplex& p, int n, FieldTag field) {
    return field == FieldTag::GF2 ? path_betti_t<GF2>(p, n) : path_betti_t<Rational>(p, n);
}

/// Persistent path homology of a count/frequency table. Thresholds are the
/// distinct positive values in descending order with 0 appended (the
/// everything-allowed endpoint). The Omega spaces grow as the threshold
/// loosens, so extending a global basis grade by grade yields a filtered
/// chain complex consumed by the standard reduction; bars are reported in the
/// native decreasing parameter.
template <class T>
Barcode persistent_path_homology_t(const FiltrationTable& f, int maxdim) {
    if (f.direction != Direction::Superlevel)
        throw ConfigError("persistent path homology needs a count or frequency table");
    std::vector<Rational> thresholds;
    for (const auto& grade : f.values)
        for (const auto& v : grade)
            if (v.is_finite() && v.value() > 0) thresholds.push_back(v.value());
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    thresholds.push_back(Rational(0));

    const int B = f.alphabet_size;
    std::vector<SpanSolver<T>> span(f.dmax + 1, SpanSolver<T>(0));
    for (int n = 0; n <= f.dmax; ++n) span[n] = SpanSolver<T>(tuple_count(n + 1, B));

    std::vector<detail::ChainCell<T>> cells;

    for (const Rational& a : thresholds) {
        PathComplex p = detail::path_complex_at(f, a);
        for (int n = 0; n <= f.dmax; ++n) {
            for (auto& v : detail::omega_basis<T>(p, n)) {
                const std::uint32_t id = static_cast<std::uint32_t>(cells.size());
                if (!span[n].add(v, id)) continue;  // already spanned at a tighter threshold
                detail::ChainCell<T> cell;
                cell.dim = n;
                cell.value = a;
                cell.name = "omega" + std::to_string(n) + "#" + std::to_string(id);
                if (n >= 1) {
                    auto db = detail::chain_boundary(v, n + 1, B);
                    auto combo = span[n - 1].solve(std::move(db));
                    if (!combo)
                        throw InternalError("path tower: boundary not in the lower span");
                    for (const auto& [i, c] : *combo) cell.boundary.emplace_back(i, c);
                    std::sort(cell.boundary.begin(), cell.boundary.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    return detail::reduce_filtered_cells(cells, /*decreasing=*/true, maxdim, false);
}

inline Barcode persistent_path_homology(const FiltrationTable& f, FieldTag field, int maxdim) {
    return field == FieldTag::GF2 ? persistent_path_homology_t<GF2>(f, maxdim)
                                  : persistent_path_homology_t<Rational>(f, maxdim);
}

}  // namespace seqtopo
