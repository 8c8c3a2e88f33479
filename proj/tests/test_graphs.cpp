#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "graphlab/dataset.hpp"
#include "graphlab/errors.hpp"
#include "graphlab/graph.hpp"
#include "graphlab/rng.hpp"

using namespace graphlab;

TEST_CASE("erdos-renyi basics") {
    CHECK(gen_erdos_renyi(1, 0.5, 7).num_edges() == 0);

    FeaturedGraph a = gen_erdos_renyi(30, 3.0, 123);
    FeaturedGraph b = gen_erdos_renyi(30, 3.0, 123);
    CHECK(a.edges() == b.edges());
    FeaturedGraph c = gen_erdos_renyi(30, 3.0, 124);
    CHECK(a.edges() != c.edges());

    CHECK_THROWS_AS(gen_erdos_renyi(5, 5.0, 1), ParameterError);
    CHECK_THROWS_AS(gen_erdos_renyi(5, -0.1, 1), ParameterError);
}

TEST_CASE("erdos-renyi mean degree estimate") {
    // Monte-Carlo check of the binomial mean: n=50, target degree 4
    const std::size_t n = 50;
    double total_degree = 0.0;
    const int samples = 1000;
    for (int s = 0; s < samples; ++s) {
        FeaturedGraph g = gen_erdos_renyi(n, 4.0, derive_seed(99, std::uint64_t(s)));
        total_degree += 2.0 * double(g.num_edges()) / double(n);
    }
    const double mean = total_degree / samples;
    CHECK(mean > 3.8);
    CHECK(mean < 4.2);
}

TEST_CASE("erdos-renyi emits no self-loops or duplicates") {
    std::size_t checked = 0;
    for (int s = 0; s < 100; ++s) {
        FeaturedGraph g = gen_erdos_renyi(10 + s % 40, 1.0 + (s % 5), derive_seed(5, std::uint64_t(s)));
        std::set<FeaturedGraph::Edge> seen;
        for (const auto& [u, v] : g.edges()) {
            CHECK(u < v);
            CHECK(v < g.order());
            CHECK(seen.insert({u, v}).second);
            ++checked;
        }
    }
    CHECK(checked > 1000); // sampled well over 10^4 pair slots
}

TEST_CASE("make_gn") {
    FeaturedGraph g = make_gn(3);
    CHECK(g.order() == 3);
    CHECK(g.num_edges() == 0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(g.features().at(i, 0) == 1.0);

    CHECK(make_gn(1).order() == 1);
}

TEST_CASE("make_glr features and counts") {
    FeaturedGraph g = make_glr(1, 1);
    CHECK(g.order() == 2);
    CHECK(g.num_edges() == 0);
    CHECK(g.features().at(0, 0) == 2.0);
    CHECK(g.features().at(0, 1) == 1.0);
    CHECK(g.features().at(1, 0) == 2.0);
    CHECK(g.features().at(1, 1) == 2.0);

    FeaturedGraph h = make_glr(2, 3);
    CHECK(h.order() == 8);
    std::size_t type_u = 0, type_w = 0;
    for (std::size_t i = 0; i < h.order(); ++i) {
        CHECK(h.features().at(i, 0) == 2.0);
        if (h.features().at(i, 1) == 1.0) ++type_u;
        if (h.features().at(i, 1) == 2.0) ++type_w;
    }
    CHECK(type_u == 2);
    CHECK(type_w == 6);

    FeaturedGraph e = make_glr(1, 1, GlrEdgeMode::er(3, 1.0));
    CHECK(e.features().values() == g.features().values());
    CHECK(e.num_edges() <= 1);
}

TEST_CASE("make_glr exact type counts across a grid") {
    for (std::size_t l : {1, 3, 7}) {
        for (std::size_t r : {1, 2, 5}) {
            FeaturedGraph g = make_glr(l, r, GlrEdgeMode::er(derive_seed(l, r), 2.0));
            std::size_t u = 0, w = 0;
            for (std::size_t i = 0; i < g.order(); ++i) {
                if (g.features().at(i, 1) == 1.0) ++u;
                else if (g.features().at(i, 1) == 2.0) ++w;
            }
            CHECK(u == l);
            CHECK(w == l * r);
        }
    }
}

TEST_CASE("target_square") {
    CHECK(target_square(make_gn(1)) == 1.0);
    CHECK(target_square(make_gn(13)) == 169.0);
    CHECK(target_square(make_gn(200)) == 40000.0);
}

TEST_CASE("target_h frozen values") {
    // frozen from a 40-digit evaluation of the closed form
    CHECK(target_h(1, 1) == doctest::Approx(4.0001295387505884).epsilon(1e-12));
    CHECK(target_h(2, 3) == doctest::Approx(16.000094558217963).epsilon(1e-12));
    CHECK(target_h(50, 50) == doctest::Approx(5100.0004306200794).epsilon(1e-12));
}

TEST_CASE("target_h bounds and tail behavior") {
    for (std::size_t l = 1; l <= 10; ++l) {
        for (std::size_t r = 1; r <= 10; ++r) {
            const double h = target_h(l, r);
            const double lo = 2.0 * double(l) * (1.0 + double(r));
            const double hi = 3.0 * double(l) * (1.0 + double(r));
            CHECK(h > lo);
            CHECK(h <= hi);
        }
    }
    // h - l(2+2r) decreases to 0+ as r grows at fixed l
    double prev = target_h(3, 1) - 3.0 * (2.0 + 2.0);
    for (std::size_t r = 2; r <= 64; r *= 2) {
        const double gap = target_h(3, r) - 3.0 * (2.0 + 2.0 * double(r));
        CHECK(gap > 0.0);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("graph canonicalization and permutation") {
    FeaturedGraph g(3, {{2, 0}, {1, 0}, {0, 1}}, Tensor::from_rows({{1.0}, {2.0}, {3.0}}));
    CHECK(g.num_edges() == 2);
    CHECK(g.edges()[0] == FeaturedGraph::Edge{0, 1});
    CHECK(g.edges()[1] == FeaturedGraph::Edge{0, 2});

    FeaturedGraph p = g.permuted({2, 0, 1});
    CHECK(p.has_edge(2, 0));
    CHECK(p.has_edge(2, 1));
    CHECK(!p.has_edge(0, 1));
    CHECK(p.features().at(2, 0) == 1.0);

    CHECK_THROWS_AS(FeaturedGraph(2, {{0, 0}}, Tensor::ones(2, 1)), ParameterError);
    CHECK_THROWS_AS(FeaturedGraph(2, {{0, 5}}, Tensor::ones(2, 1)), ParameterError);
}

TEST_CASE("dataset round-trip") {
    Dataset ds;
    ds.provenance = "square-train seed=42 n=[10,50] deg=[1,5] count=3";
    SplitMix64 rng(42);
    for (int i = 0; i < 3; ++i) {
        FeaturedGraph g = gen_erdos_renyi(5 + std::size_t(i), 1.5, rng.next());
        // exercise non-trivial reals in features and targets
        std::vector<double> feat(g.order() * 2);
        for (auto& v : feat) v = rng.uniform(-10.0, 10.0);
        g = g.with_features(Tensor(g.order(), 2, std::move(feat)));
        ds.items.push_back({g, {target_square(g), rng.uniform()}});
    }

    const auto path = std::filesystem::temp_directory_path() / "graphlab_ds_test.graphs";
    write_dataset(ds, path);
    Dataset back = read_dataset(path);
    CHECK(back == ds);
    std::filesystem::remove(path);
}

TEST_CASE("empty dataset writes a header-only file") {
    Dataset ds;
    ds.provenance = "empty";
    const auto path = std::filesystem::temp_directory_path() / "graphlab_ds_empty.graphs";
    write_dataset(ds, path);
    Dataset back = read_dataset(path);
    CHECK(back.items.empty());
    CHECK(back.provenance == "empty");
    std::ifstream in(path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        CHECK(line.rfind("#", 0) == 0);
    }
    CHECK(lines == 1);
    std::filesystem::remove(path);
}

TEST_CASE("malformed dataset files name the offending line") {
    const auto path = std::filesystem::temp_directory_path() / "graphlab_ds_bad.graphs";
    {
        std::ofstream out(path);
        out << "# a comment\n";
        out << "G 2 1 1\n";
        out << "0 7\n"; // endpoint out of range, line 3
    }
    try {
        read_dataset(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::filesystem::remove(path);
}
