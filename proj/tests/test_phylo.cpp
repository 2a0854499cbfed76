#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "seqtopo/phylo.hpp"
#include "seqtopo/pipeline.hpp"

using namespace seqtopo;

namespace {

Curve make_curve(std::initializer_list<double> xs) {
    Curve c(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) c(i++) = x;
    return c;
}

Curve random_curve(std::mt19937& rng, Eigen::Index n) {
    std::uniform_real_distribution<double> u(0, 10);
    Curve c(n);
    for (Eigen::Index i = 0; i < n; ++i) c(i) = u(rng);
    return c;
}

}  // namespace

TEST_CASE("curve distances: worked values") {
    Curve a = make_curve({1, 2}), b = make_curve({3, 1});
    CHECK(curve_distance(a, a, Metric::Manhattan) == 0.0);
    CHECK(curve_distance(a, a, Metric::Euclidean) == 0.0);
    CHECK(curve_distance(a, a, Metric::Chebyshev) == 0.0);
    CHECK(curve_distance(a, a, Metric::Minkowski, 3) == 0.0);
    CHECK(curve_distance(a, b, Metric::Manhattan) == doctest::Approx(3.0));
    CHECK(curve_distance(a, b, Metric::Euclidean) == doctest::Approx(std::sqrt(5.0)));
    CHECK(curve_distance(a, b, Metric::Chebyshev) == doctest::Approx(2.0));
    CHECK_THROWS_AS(curve_distance(a, make_curve({1, 2, 3}), Metric::Manhattan), ConfigError);
    CHECK_THROWS_AS(curve_distance(a, b, Metric::Minkowski, 0.5), ConfigError);
}

TEST_CASE("minkowski specializes to manhattan and euclidean") {
    std::mt19937 rng(601);
    for (int rep = 0; rep < 50; ++rep) {
        Curve a = random_curve(rng, 20), b = random_curve(rng, 20);
        CHECK(curve_distance(a, b, Metric::Minkowski, 1) ==
              doctest::Approx(curve_distance(a, b, Metric::Manhattan)).epsilon(1e-12));
        CHECK(curve_distance(a, b, Metric::Minkowski, 2) ==
              doctest::Approx(curve_distance(a, b, Metric::Euclidean)).epsilon(1e-12));
    }
}

TEST_CASE("distance matrix basics") {
    FeatureCurveSet set;
    set.ids = {"a", "b", "c"};
    std::mt19937 rng(607);
    Curve shared = random_curve(rng, 10);
    set.curves = {{{"gap1", shared}}, {{"gap1", shared}}, {{"gap1", random_curve(rng, 10)}}};
    auto dm = distance_matrix(set, Metric::Manhattan, {"gap1"});
    CHECK(dm.d(0, 1) == 0.0);  // identical curves
    CHECK(dm.d(0, 0) == 0.0);
    CHECK(dm.d(0, 2) == dm.d(2, 0));
    CHECK(dm.d(0, 2) > 0.0);

    FeatureCurveSet missing = set;
    missing.curves[1].clear();
    CHECK_THROWS_WITH_AS(distance_matrix(missing, Metric::Manhattan, {"gap1"}),
                         doctest::Contains("'b'"), InputError);
}

TEST_CASE("permuting inputs permutes the matrix consistently") {
    std::mt19937 rng(613);
    FeatureCurveSet set;
    for (int i = 0; i < 5; ++i) {
        set.ids.push_back("s" + std::to_string(i));
        set.curves.push_back({{"gap1", random_curve(rng, 8)}});
    }
    auto dm = distance_matrix(set, Metric::Euclidean, {"gap1"});
    FeatureCurveSet rev;
    for (int i = 4; i >= 0; --i) {
        rev.ids.push_back(set.ids[static_cast<std::size_t>(i)]);
        rev.curves.push_back(set.curves[static_cast<std::size_t>(i)]);
    }
    auto dm2 = distance_matrix(rev, Metric::Euclidean, {"gap1"});
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(dm.d(i, j) == doctest::Approx(dm2.d(4 - i, 4 - j)).epsilon(1e-15));
}

TEST_CASE("triangle inequality for the minkowski family") {
    std::mt19937 rng(617);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        std::vector<Curve> cs;
        for (int i = 0; i < 6; ++i) cs.push_back(random_curve(rng, 12));
        for (std::size_t x = 0; x < cs.size(); ++x)
            for (std::size_t y = 0; y < cs.size(); ++y)
                for (std::size_t z = 0; z < cs.size(); ++z) {
                    const double xy = curve_distance(cs[x], cs[y], Metric::Minkowski, p);
                    const double yz = curve_distance(cs[y], cs[z], Metric::Minkowski, p);
                    const double xz = curve_distance(cs[x], cs[z], Metric::Minkowski, p);
                    CHECK(xz <= xy + yz + 1e-9);
                }
    }
}

TEST_CASE("upgma: forced three-point topology with half-distance heights") {
    DistanceMatrix dm;
    dm.ids = {"a", "b", "c"};
    dm.d = Eigen::MatrixXd::Zero(3, 3);
    dm.d(0, 1) = dm.d(1, 0) = 1;
    dm.d(0, 2) = dm.d(2, 0) = 10;
    dm.d(1, 2) = dm.d(2, 1) = 10;
    Dendrogram t = cluster_upgma(dm, Linkage::Average);
    REQUIRE(t.nodes.size() == 5);
    const auto& first_merge = t.nodes[3];
    CHECK(first_merge.height == doctest::Approx(0.5));
    auto leaves = t.leaves_below(3);
    std::sort(leaves.begin(), leaves.end());
    CHECK(leaves == std::vector<std::string>{"a", "b"});
    CHECK(t.nodes[static_cast<std::size_t>(t.root)].height == doctest::Approx(5.0));
}

TEST_CASE("upgma: deterministic tie-break on equidistant triples") {
    DistanceMatrix dm;
    dm.ids = {"c", "a", "b"};
    dm.d = Eigen::MatrixXd::Constant(3, 3, 2.0);
    dm.d.diagonal().setZero();
    Dendrogram t = cluster_upgma(dm, Linkage::Average);
    auto leaves = t.leaves_below(3);  // first merge
    std::sort(leaves.begin(), leaves.end());
    CHECK(leaves == std::vector<std::string>{"a", "b"});  // smallest lexicographic pair
    CHECK_THROWS_AS(cluster_upgma(DistanceMatrix{{"x"}, Eigen::MatrixXd::Zero(1, 1)}),
                    InputError);
}

TEST_CASE("upgma heights are monotone and order-invariant") {
    std::mt19937 rng(619);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 7;
        DistanceMatrix dm;
        dm.d = Eigen::MatrixXd::Zero(n, n);
        std::uniform_real_distribution<double> u(0.1, 9.0);
        for (int i = 0; i < n; ++i) {
            dm.ids.push_back("t" + std::to_string(i));
            for (int j = 0; j < i; ++j) dm.d(i, j) = dm.d(j, i) = u(rng);
        }
        for (Linkage lk : {Linkage::Average, Linkage::Single, Linkage::Complete}) {
            Dendrogram t = cluster_upgma(dm, lk);
            for (const auto& nd : t.nodes) {
                if (nd.left < 0) continue;
                CHECK(nd.height >= t.nodes[static_cast<std::size_t>(nd.left)].height);
                CHECK(nd.height >= t.nodes[static_cast<std::size_t>(nd.right)].height);
            }
        }
        // clade sets invariant under input order
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        DistanceMatrix pm;
        pm.d = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            pm.ids.push_back(dm.ids[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
            for (int j = 0; j < n; ++j)
                pm.d(i, j) = dm.d(perm[static_cast<std::size_t>(i)],
                                  perm[static_cast<std::size_t>(j)]);
        }
        auto clades = [](const Dendrogram& t) {
            std::set<std::set<std::string>> out;
            for (std::size_t i = 0; i < t.nodes.size(); ++i) {
                auto ls = t.leaves_below(static_cast<int>(i));
                out.insert(std::set<std::string>(ls.begin(), ls.end()));
            }
            return out;
        };
        CHECK(clades(cluster_upgma(dm)) == clades(cluster_upgma(pm)));
    }
}

TEST_CASE("newick output: worked forms and quoting") {
    DistanceMatrix dm;
    dm.ids = {"a", "b"};
    dm.d = Eigen::MatrixXd::Zero(2, 2);
    dm.d(0, 1) = dm.d(1, 0) = 3;
    Dendrogram t = cluster_upgma(dm);
    CHECK(to_newick(t) == "(a:1.5,b:1.5);");

    DistanceMatrix q;
    q.ids = {"x(1)", "y"};
    q.d = Eigen::MatrixXd::Zero(2, 2);
    q.d(0, 1) = q.d(1, 0) = 2;
    CHECK(to_newick(cluster_upgma(q)) == "('x(1)':1,y:1);");
}

TEST_CASE("newick round-trips through an independent parser") {
    std::mt19937 rng(631);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 6;
        DistanceMatrix dm;
        dm.d = Eigen::MatrixXd::Zero(n, n);
        std::uniform_real_distribution<double> u(0.5, 9.0);
        for (int i = 0; i < n; ++i) {
            dm.ids.push_back("leaf" + std::to_string(i));
            for (int j = 0; j < i; ++j) dm.d(i, j) = dm.d(j, i) = u(rng);
        }
        Dendrogram t = cluster_upgma(dm);
        auto parsed = oracle::parse_newick(to_newick(t));
        std::vector<std::set<std::string>> clades;
        parsed.clades(clades);
        std::set<std::set<std::string>> parsed_clades(clades.begin(), clades.end());
        std::set<std::set<std::string>> want;
        for (std::size_t i = 0; i < t.nodes.size(); ++i) {
            auto ls = t.leaves_below(static_cast<int>(i));
            want.insert(std::set<std::string>(ls.begin(), ls.end()));
        }
        CHECK(parsed_clades == want);
    }
}

TEST_CASE("matrix csv and phylip exports") {
    DistanceMatrix dm;
    dm.ids = {"a", "b"};
    dm.d = Eigen::MatrixXd::Zero(2, 2);
    dm.d(0, 1) = dm.d(1, 0) = 1.25;
    const std::string csv = matrix_to_csv(dm);
    CHECK(csv == "id,a,b\na,0,1.25\nb,1.25,0\n");
    std::istringstream in(csv);
    auto back = matrix_from_csv(in);
    CHECK(back.ids == dm.ids);
    CHECK(back.d(0, 1) == doctest::Approx(1.25));
    const std::string phy = matrix_to_phylip(dm);
    CHECK(phy.rfind("2\n", 0) == 0);
    CHECK(phy.find("a  0.000000  1.250000") != std::string::npos);
}

TEST_CASE("curve padding holds the last value") {
    std::vector<Curve> cs{make_curve({1, 2, 3}), make_curve({5})};
    pad_to_common_grid(cs);
    REQUIRE(cs[1].size() == 3);
    CHECK(cs[1](1) == 5.0);
    CHECK(cs[1](2) == 5.0);
}

TEST_CASE("pipeline grids: window functions get integer steps, freq a fixed unit grid") {
    Sequence s = normalize("x", "ACGTACGTTGCAACGT", AmbiguityPolicy::Skip);
    FeatureOptions opt;
    opt.value_cap = 16;
    opt.dims = {0, 1};

    opt.function = "ell";
    auto fe = compute_features(s, opt);
    REQUIRE(fe.curve_grid.size() == 17);
    CHECK(fe.curve_grid.front() == 0);
    CHECK(fe.curve_grid.back() == 16);

    opt.function = "freq";
    auto fq = compute_features(s, opt);
    REQUIRE(fq.curve_grid.size() == 17);  // k/16 from 1 down to 0
    CHECK(fq.curve_grid.front() == 1);
    CHECK(fq.curve_grid.back() == 0);
    // identical sequences always produce identical curves on the fixed grid
    auto fq2 = compute_features(s, opt);
    for (std::size_t i = 0; i < fq.gaps.size(); ++i)
        CHECK(fq.gaps[i].values == fq2.gaps[i].values);
}
