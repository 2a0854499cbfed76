#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <tuple>

#include "oracles.hpp"
#include "seqtopo/persistence.hpp"
#include "seqtopo/seq_io.hpp"

using namespace seqtopo;

namespace {

const char* kPrimer = "GGGGAACTTCTCCTGCTAGAAT";

Sequence seq_of(const std::string& s) { return normalize("x", s, AmbiguityPolicy::Skip); }

FilteredComplex primer_ell_complex() {
    auto f = min_window_table(seq_of(kPrimer), 3, 64);
    return sublevel_filtered_complex(f, &Alphabet::dna());
}

using Bars = std::multiset<std::tuple<int, std::string, std::string>>;

Bars bar_multiset(const Barcode& b) {
    Bars out;
    for (const auto& iv : b.intervals)
        out.emplace(iv.dim, to_string(iv.birth), iv.essential ? "inf" : to_string(iv.death));
    return out;
}

FiltrationTable random_face_preserving(std::mt19937& rng, int alphabet, int dmax, int vmax) {
    FiltrationTable f;
    f.alphabet_size = alphabet;
    f.dmax = dmax;
    f.direction = Direction::Sublevel;
    f.allocate();
    std::uniform_int_distribution<int> val(0, vmax);
    std::uniform_real_distribution<double> u(0, 1);
    for (auto& grade : f.values)
        for (auto& v : grade)
            if (u(rng) > 0.15) v = ExtendedValue(make_rational(val(rng)));
    f = face_preserving_modification(f);
    return f;
}

}  // namespace

TEST_CASE("primer barcode over both fields") {
    FilteredComplex F = primer_ell_complex();
    for (FieldTag field : {FieldTag::GF2, FieldTag::Q}) {
        Barcode b = persistent_homology(F, field, 2);
        Bars d0, d1;
        for (const auto& iv : b.intervals) {
            if (iv.dim == 0) d0.insert(*bar_multiset(Barcode{false, {iv}, {}}).begin());
            if (iv.dim == 1) d1.insert(*bar_multiset(Barcode{false, {iv}, {}}).begin());
        }
        CHECK(d0 == Bars{{0, "0", "1"}, {0, "0", "1"}, {0, "0", "1"}, {0, "0", "inf"}});
        Bars want1;
        for (int i = 0; i < 9; ++i) want1.emplace(1, "1", "2");
        want1.emplace(1, "1", "3");
        CHECK(d1 == want1);
    }
}

TEST_CASE("primer zero-length diagnostics include the value-2 classes") {
    Barcode b = persistent_homology(primer_ell_complex(), FieldTag::GF2, 2);
    long zero_dim1_at2 = 0;
    for (const auto& iv : b.zero_length)
        if (iv.dim == 1 && iv.birth == 2 && iv.death == 2) ++zero_dim1_at2;
    CHECK(zero_dim1_at2 >= 2);  // the two born-and-dead-at-2 edge classes
    for (const auto& iv : b.intervals) CHECK((iv.essential || iv.birth < iv.death));
}

TEST_CASE("primer persistent betti numbers, both fields") {
    FilteredComplex F = primer_ell_complex();
    for (FieldTag field : {FieldTag::GF2, FieldTag::Q}) {
        Barcode b = persistent_homology(F, field, 2);
        const auto inf = ExtendedValue::infinity();
        CHECK(persistent_betti(b, 0, Rational(0), ExtendedValue(make_rational(1))) == 4);
        CHECK(persistent_betti(b, 0, Rational(0), ExtendedValue(make_rational(2))) == 1);
        CHECK(persistent_betti(b, 0, Rational(0), inf) == 1);
        CHECK(persistent_betti(b, 1, Rational(1), ExtendedValue(make_rational(2))) == 10);
        CHECK(persistent_betti(b, 1, Rational(1), ExtendedValue(make_rational(3))) == 1);
        CHECK(persistent_betti(b, 1, Rational(1), ExtendedValue(make_rational(4))) == 0);
        CHECK(persistent_betti(b, 1, Rational(1), inf) == 0);
    }
    Barcode b = persistent_homology(F, FieldTag::Q, 2);
    CHECK_THROWS_AS(persistent_betti(b, 0, Rational(2), ExtendedValue(make_rational(1))),
                    ConfigError);
}

TEST_CASE("single vertex: one essential bar") {
    FilteredComplex F;
    FilteredCell v;
    v.dim = 0;
    v.value = Rational(0);
    v.name = "A";
    F.cells.push_back(v);
    F.grid = {Rational(0)};
    Barcode b = persistent_homology(F, FieldTag::Q, 1);
    REQUIRE(b.intervals.size() == 1);
    CHECK(b.intervals[0].essential);
    CHECK(b.intervals[0].dim == 0);
}

TEST_CASE("out-of-order boundary reference is a structural error") {
    FilteredComplex F;
    FilteredCell e;
    e.dim = 1;
    e.value = Rational(0);
    e.name = "AG";
    e.boundary = {{0, 1}};  // refers to itself (index 0 == its own position)
    F.cells.push_back(e);
    CHECK_THROWS_AS(persistent_homology(F, FieldTag::Q, 1), InternalError);
}

TEST_CASE("missing face during filtered assembly names the simplex") {
    FiltrationTable f;
    f.alphabet_size = 2;
    f.dmax = 1;
    f.direction = Direction::Sublevel;
    f.allocate();
    f.values[1][0] = ExtendedValue(make_rational(1));  // edge AA present, vertex A absent
    f.face_preserving = true;                          // deliberately wrong
    CHECK_THROWS_AS(sublevel_filtered_complex(f), InternalError);
}

TEST_CASE("persistent rank matches the dense GF2 oracle on random filtrations") {
    std::mt19937 rng(211);
    for (int rep = 0; rep < 40; ++rep) {
        auto f = random_face_preserving(rng, 2, 3, 5);
        FilteredComplex F = sublevel_filtered_complex(f);
        if (F.cells.empty() || F.cells.size() > 30) continue;
        Barcode b = persistent_homology_t<GF2>(F, 2);
        std::uniform_int_distribution<std::size_t> pick(0, F.grid.size() - 1);
        for (int q = 0; q < 6; ++q) {
            std::size_t ia = pick(rng), ib = pick(rng);
            if (ia > ib) std::swap(ia, ib);
            const Rational a = F.grid[ia], bb = F.grid[ib];
            for (int n = 0; n <= 2; ++n) {
                const long want = oracle::persistent_rank_gf2(F, n, F.prefix_size(a),
                                                              F.prefix_size(bb));
                CHECK(persistent_rank(b, n, a, bb) == want);
            }
        }
    }
}

TEST_CASE("closed-window persistent betti equals image rank into the open prefix") {
    std::mt19937 rng(223);
    for (int rep = 0; rep < 25; ++rep) {
        auto f = random_face_preserving(rng, 2, 3, 5);
        FilteredComplex F = sublevel_filtered_complex(f);
        if (F.cells.empty() || F.cells.size() > 30) continue;
        Barcode b = persistent_homology_t<GF2>(F, 2);
        for (std::size_t ia = 0; ia < F.grid.size(); ++ia)
            for (std::size_t ib = ia + 1; ib < F.grid.size(); ++ib) {
                const Rational a = F.grid[ia], bb = F.grid[ib];
                // prefix strictly below bb
                std::size_t open_prefix = 0;
                for (const auto& c : F.cells) {
                    if (!(c.value < bb)) break;
                    ++open_prefix;
                }
                for (int n = 0; n <= 1; ++n) {
                    const long want =
                        oracle::persistent_rank_gf2(F, n, F.prefix_size(a), open_prefix);
                    CHECK(persistent_betti(b, n, a, ExtendedValue(bb)) == want);
                }
            }
    }
}

TEST_CASE("betti curve: primer dim-0 values and cross-module consistency") {
    FilteredComplex F = primer_ell_complex();
    Barcode b = persistent_homology(F, FieldTag::Q, 2);
    auto curve = betti_curve(b, {Rational(0), Rational(1), Rational(2)}, 0);
    CHECK(curve.values == std::vector<long>{4, 1, 1});

    Barcode empty;
    auto zero = betti_curve(empty, {Rational(0), Rational(1)}, 0);
    CHECK(zero.values == std::vector<long>{0, 0});

    for (const Rational& t : F.grid)
        for (int n = 0; n <= 2; ++n) {
            auto c = betti_curve(b, {t}, n);
            CHECK(c.values[0] == F.betti_at(n, t, FieldTag::Q));
        }
}

TEST_CASE("interval counts at every grid value equal fresh betti, both fields") {
    std::mt19937 rng(227);
    for (int rep = 0; rep < 15; ++rep) {
        auto f = random_face_preserving(rng, 2, 3, 4);
        FilteredComplex F = sublevel_filtered_complex(f);
        if (F.cells.empty()) continue;
        for (FieldTag field : {FieldTag::GF2, FieldTag::Q}) {
            Barcode b = persistent_homology(F, field, 2);
            for (const Rational& t : F.grid)
                for (int n = 0; n <= 2; ++n)
                    CHECK(betti_curve(b, {t}, n).values[0] == F.betti_at(n, t, field));
        }
    }
}

TEST_CASE("barcode is invariant under reordering within a filtration value") {
    std::mt19937 rng(229);
    for (int rep = 0; rep < 15; ++rep) {
        auto f = random_face_preserving(rng, 2, 2, 3);
        FilteredComplex F = sublevel_filtered_complex(f);
        if (F.cells.size() < 4) continue;
        Bars reference = bar_multiset(persistent_homology_t<GF2>(F, 2));

        // shuffle cells within (value, dim) groups; face-before-coface holds
        // because dims stay ordered within a value
        FilteredComplex shuffled = F;
        std::vector<std::uint32_t> perm(F.cells.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::uint32_t>(i);
        std::size_t lo = 0;
        while (lo < perm.size()) {
            std::size_t hi = lo;
            while (hi < perm.size() && F.cells[perm[hi]].value == F.cells[perm[lo]].value &&
                   F.cells[perm[hi]].dim == F.cells[perm[lo]].dim)
                ++hi;
            std::shuffle(perm.begin() + static_cast<std::ptrdiff_t>(lo),
                         perm.begin() + static_cast<std::ptrdiff_t>(hi), rng);
            lo = hi;
        }
        std::vector<std::uint32_t> inv(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<std::uint32_t>(i);
        shuffled.cells.clear();
        for (std::size_t i = 0; i < perm.size(); ++i) {
            FilteredCell c = F.cells[perm[i]];
            for (auto& [fi, coeff] : c.boundary) fi = inv[fi];
            shuffled.cells.push_back(std::move(c));
        }
        CHECK(bar_multiset(persistent_homology_t<GF2>(shuffled, 2)) == reference);
    }
}

TEST_CASE("GF2 and Q interval multisets agree on sequence-derived filtrations") {
    std::mt19937 rng(233);
    for (int rep = 0; rep < 10; ++rep) {
        auto f = min_window_table(seq_of(oracle::random_dna(rng, 40)), 3, 64);
        FilteredComplex F = sublevel_filtered_complex(f, &Alphabet::dna());
        CHECK(bar_multiset(persistent_homology(F, FieldTag::GF2, 2)) ==
              bar_multiset(persistent_homology(F, FieldTag::Q, 2)));
    }
}

TEST_CASE("representatives are cycles at birth; the surviving primer class is AT+TA") {
    FilteredComplex F = primer_ell_complex();
    Barcode b = persistent_homology(F, FieldTag::GF2, 2, /*representatives=*/true);

    std::map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < F.cells.size(); ++i) index[F.cells[i].name] = i;

    // every representative is a GF2 cycle: its boundary cancels exactly
    for (const auto& iv : b.intervals) {
        if (iv.representative.empty()) continue;
        std::map<std::uint32_t, int> acc;
        for (const auto& term : iv.representative) {
            REQUIRE(index.count(term));
            for (const auto& [fi, coeff] : F.cells[index[term]].boundary) acc[fi] ^= coeff & 1;
        }
        for (const auto& [fi, parity] : acc) CHECK(parity == 0);
    }

    // exactly one dim-1 bar [1, 3); the surviving class admits the cycle AT+TA
    // represents it: not a boundary just below 3, a boundary at 3
    long bars13 = 0;
    for (const auto& iv : b.intervals)
        if (iv.dim == 1 && iv.birth == 1 && !iv.essential && iv.death == 3) ++bars13;
    CHECK(bars13 == 1);
    const std::set<std::string> at_ta{"AT", "TA"};
    CHECK_FALSE(oracle::is_boundary_gf2(F, 1, F.prefix_size(Rational(2)), at_ta));
    CHECK(oracle::is_boundary_gf2(F, 1, F.prefix_size(Rational(3)), at_ta));
}

TEST_CASE("barcode json and csv formats") {
    FilteredComplex F = primer_ell_complex();
    Barcode b = persistent_homology(F, FieldTag::Q, 1);
    const std::string json = barcode_to_json(b, "primer", "ell", FieldTag::Q);
    CHECK(json.find("\"parameter_direction\":\"increasing\"") != std::string::npos);
    CHECK(json.find("\"death\":\"inf\"") != std::string::npos);
    const std::string csv = barcode_to_csv(b);
    CHECK(csv.rfind("dim,birth,death\n", 0) == 0);
    CHECK(csv.find("0,0,inf") != std::string::npos);
}
