#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "graphlab/encodings.hpp"
#include "graphlab/errors.hpp"
#include "graphlab/isomorphism.hpp"
#include "graphlab/rng.hpp"
#include "graphlab/spectral.hpp"

using namespace graphlab;

namespace {

Tensor random_symmetric(std::size_t n, SplitMix64& rng) {
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = rng.uniform(-2.0, 2.0);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    return Tensor(n, n, std::move(d));
}

// Oracle: reconstruction residual ||U diag(l) U^T - M||_inf.
double reconstruction_error(const Tensor& m, const EigenDecomposition& dec) {
    const std::size_t n = m.rows();
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += dec.vectors.at(i, k) * dec.eigenvalues[k] * dec.vectors.at(j, k);
            err = std::max(err, std::abs(acc - m.at(i, j)));
        }
    return err;
}

double orthonormality_error(const EigenDecomposition& dec) {
    const std::size_t n = dec.vectors.rows();
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += dec.vectors.at(k, i) * dec.vectors.at(k, j);
            err = std::max(err, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    return err;
}

FeaturedGraph triangle() { return FeaturedGraph::constant_features(3, {{0, 1}, {1, 2}, {0, 2}}); }

} // namespace

TEST_CASE("laplacian matrices") {
    FeaturedGraph single_edge = FeaturedGraph::constant_features(2, {{0, 1}});
    Tensor lh = laplacian(single_edge);
    CHECK(lh.at(0, 0) == 1.0);
    CHECK(lh.at(0, 1) == -1.0);
    CHECK(lh.at(1, 0) == -1.0);
    CHECK(lh.at(1, 1) == 1.0);

    Tensor lg = laplacian(FeaturedGraph::constant_features(2, {}));
    CHECK(lg.max_abs() == 0.0);

    Tensor lt = laplacian(triangle());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(lt.at(i, j) == (i == j ? 2.0 : -1.0));
}

TEST_CASE("sym_eig on small matrices") {
    EigenDecomposition d1 = sym_eig(Tensor::from_rows({{3.0, 0.0}, {0.0, 1.0}}));
    CHECK(d1.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d1.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(d1.vectors.at(1, 0) == 1.0);
    CHECK(d1.vectors.at(0, 1) == 1.0);
    CHECK(d1.vectors.at(0, 0) == 0.0);

    EigenDecomposition d2 = sym_eig(Tensor::from_rows({{1.0, -1.0}, {-1.0, 1.0}}));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(d2.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d2.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d2.vectors.at(0, 0) == doctest::Approx(s).epsilon(1e-12));
    CHECK(d2.vectors.at(1, 0) == doctest::Approx(s).epsilon(1e-12));
    CHECK(d2.vectors.at(0, 1) == doctest::Approx(s).epsilon(1e-12));
    CHECK(d2.vectors.at(1, 1) == doctest::Approx(-s).epsilon(1e-12));

    CHECK_THROWS_AS(sym_eig(Tensor::from_rows({{1.0, 2.0}, {0.0, 1.0}})), ContractError);
    CHECK_THROWS_AS(sym_eig(Tensor::zeros(2, 3)), ContractError);
}

TEST_CASE("sym_eig reconstruction on random symmetric matrices") {
    SplitMix64 rng(31);
    Tensor m8 = random_symmetric(8, rng);
    CHECK(reconstruction_error(m8, sym_eig(m8)) < 1e-8);

    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.uniform_int(31); // up to 32x32
        Tensor m = random_symmetric(n, rng);
        EigenDecomposition dec = sym_eig(m);
        CHECK(reconstruction_error(m, dec) < 1e-8);
        CHECK(orthonormality_error(dec) < 1e-8);
        CHECK(std::is_sorted(dec.eigenvalues.begin(), dec.eigenvalues.end()));
    }
}

TEST_CASE("laplacian eigenvalues are nonnegative with smallest zero") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        FeaturedGraph g = gen_erdos_renyi(3 + rng.uniform_int(20), 2.0, rng.next());
        EigenDecomposition dec = sym_eig(laplacian(g));
        CHECK(dec.eigenvalues.front() >= -1e-10);
        CHECK(std::abs(dec.eigenvalues.front()) < 1e-10);
    }
}

TEST_CASE("lappe values") {
    // Edgeless pair: the zero Laplacian is already diagonal, so the Jacobi
    // basis is the identity under the sign convention.
    EncodingMatrix e = lappe(make_gn(2), 2);
    CHECK(e.values.rows() == 2);
    CHECK(e.values.cols() == 4);
    CHECK(e.values.at(0, 0) == 0.0);
    CHECK(e.values.at(0, 1) == 1.0);
    CHECK(e.values.at(0, 2) == 0.0);
    CHECK(e.values.at(0, 3) == 0.0);
    CHECK(e.values.at(1, 1) == 0.0);
    CHECK(e.values.at(1, 3) == 1.0);

    // single edge: eigenvalues 0 and 2, rescaled by 1/n -> second pair carries 1
    EncodingMatrix s = lappe(FeaturedGraph::constant_features(2, {{0, 1}}), 2);
    CHECK(s.values.at(0, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.values.at(1, 2) == doctest::Approx(1.0).epsilon(1e-12));

    // zero padding beyond available eigenpairs
    EncodingMatrix p = lappe(make_gn(2), 4);
    CHECK(p.values.cols() == 8);
    for (std::size_t j = 4; j < 8; ++j) {
        CHECK(p.values.at(0, j) == 0.0);
        CHECK(p.values.at(1, j) == 0.0);
    }
}

TEST_CASE("lappe entries stay in [-1,1]") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        FeaturedGraph g = gen_erdos_renyi(4 + rng.uniform_int(12), 2.5, rng.next());
        EncodingMatrix e = lappe(g, 8);
        for (double v : e.values.values()) {
            CHECK(v <= 1.0 + 1e-12);
            CHECK(v >= -1.0 - 1e-12);
        }
    }
}

TEST_CASE("lappe is invariant to edge listing order") {
    std::vector<FeaturedGraph::Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}};
    FeaturedGraph a(4, edges, Tensor::ones(4, 1));
    std::reverse(edges.begin(), edges.end());
    std::swap(edges[0], edges[2]);
    FeaturedGraph b(4, edges, Tensor::ones(4, 1));
    CHECK(lappe(a, 4).values.values() == lappe(b, 4).values.values());
}

TEST_CASE("rwse values") {
    EncodingMatrix zero = rwse(make_gn(3), 3);
    CHECK(zero.values.max_abs() == 0.0);

    EncodingMatrix edge = rwse(FeaturedGraph::constant_features(2, {{0, 1}}), 2);
    CHECK(edge.values.at(0, 0) == 0.0);
    CHECK(edge.values.at(1, 0) == 0.0);
    CHECK(edge.values.at(0, 1) == 1.0);
    CHECK(edge.values.at(1, 1) == 1.0);

    EncodingMatrix tri = rwse(triangle(), 2);
    for (std::size_t v = 0; v < 3; ++v) {
        CHECK(tri.values.at(v, 0) == 0.0);
        CHECK(tri.values.at(v, 1) == doctest::Approx(0.5).epsilon(1e-15));
    }

    EncodingMatrix er = rwse(gen_erdos_renyi(12, 3.0, 5), 6);
    for (double v : er.values.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("multiset_hash formula and edge cases") {
    // n=3 -> l=2; {{x1,x1,x2}} -> 2*2^-2 + 1*2^-4 = 0.5625
    CHECK(multiset_hash({1, 1, 2}, 3, 3) == 0.5625);
    CHECK(multiset_hash({}, 4, 4) == 0.0);
    CHECK(multiset_hash({2, 1, 1}, 3, 3) == 0.5625); // order-independent

    CHECK_THROWS_AS(multiset_hash({1, 1}, 3, 1), ParameterError);
    CHECK_THROWS_AS(multiset_hash({5}, 3, 3), ParameterError);
    // k*l = 17*3 = 51 > 50
    CHECK_THROWS_AS(multiset_hash({1}, 17, 4), PrecisionError);
}

namespace {

// All multisets of size <= n over {1..k}, by backtracking.
void all_multisets(std::size_t k, std::size_t n, std::size_t min_elem,
                   std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    out.push_back(cur);
    if (cur.size() == n) return;
    for (std::size_t e = min_elem; e <= k; ++e) {
        cur.push_back(e);
        all_multisets(k, n, e, cur, out);
        cur.pop_back();
    }
}

} // namespace

TEST_CASE("multiset_hash pairwise separation by exhaustive enumeration") {
    for (auto [k, n, min_gap] : {std::tuple<std::size_t, std::size_t, double>{3, 3, std::ldexp(1.0, -6)},
                                 std::tuple<std::size_t, std::size_t, double>{4, 4, std::ldexp(1.0, -12)}}) {
        std::vector<std::vector<std::size_t>> multisets;
        std::vector<std::size_t> cur;
        all_multisets(k, n, 1, cur, multisets);
        std::vector<double> hashes;
        hashes.reserve(multisets.size());
        for (const auto& m : multisets) hashes.push_back(multiset_hash(m, k, n));
        for (std::size_t i = 0; i < hashes.size(); ++i)
            for (std::size_t j = i + 1; j < hashes.size(); ++j) {
                CHECK(std::abs(hashes[i] - hashes[j]) >= min_gap);
            }
    }
}

TEST_CASE("isomorphic on hand pairs") {
    FeaturedGraph t1 = triangle();
    FeaturedGraph t2 = t1.permuted({2, 0, 1});
    CHECK(isomorphic(t1, t2));

    FeaturedGraph path3 = FeaturedGraph::constant_features(3, {{0, 1}, {1, 2}});
    CHECK(!isomorphic(path3, t1));

    // same degree sequence, different features
    FeaturedGraph fa(2, {{0, 1}}, Tensor::from_rows({{1.0}, {2.0}}));
    FeaturedGraph fb(2, {{0, 1}}, Tensor::from_rows({{1.0}, {3.0}}));
    CHECK(!isomorphic(fa, fb));
    FeaturedGraph fc(2, {{0, 1}}, Tensor::from_rows({{2.0}, {1.0}}));
    CHECK(isomorphic(fa, fc));

    CHECK_THROWS_AS(isomorphic(make_gn(13), make_gn(13)), ParameterError);
}

TEST_CASE("the 11 graphs on 4 vertices are pairwise non-isomorphic") {
    std::vector<FeaturedGraph> reps = enumerate_graphs(4);
    CHECK(reps.size() == 11);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK(!isomorphic(reps[i], reps[j]));
}

TEST_CASE("enumerate_graphs_up_to counts") {
    // 1 + 2 + 4 + 11 isomorphism classes for orders 1..4
    CHECK(enumerate_graphs_up_to(4).size() == 18);
}

TEST_CASE("check_injectivity with LapPE") {
    InjectivityReport r2 = check_injectivity(2, PeKind::LapPE, 1e-9);
    CHECK(r2.ok());

    InjectivityReport r4 = check_injectivity(4, PeKind::LapPE, 1e-9);
    CHECK(r4.ok());
    CHECK(r4.classes == 18);
}

TEST_CASE("check_injectivity flags a degenerate encoder") {
    InjectivityReport r = check_injectivity(
        4, [](const FeaturedGraph& g) { return Tensor::zeros(g.order(), 1); }, 1e-9);
    // every same-order non-isomorphic pair must be reported
    CHECK(r.violations.size() == r.pairs_checked);
    CHECK(!r.ok());
    // orders 2,3,4 contribute C(2,2)+C(4,2)+C(11,2) pairs of equal order
    CHECK(r.pairs_checked == 1 + 6 + 55);
}
