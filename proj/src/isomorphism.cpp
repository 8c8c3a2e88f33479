#include "graphlab/isomorphism.hpp"

#include <algorithm>
#include <cmath>

#include "graphlab/errors.hpp"

namespace graphlab {

namespace {

std::vector<double> sorted_feature_rows(const FeaturedGraph& g) {
    // rows sorted lexicographically, flattened (order-invariant fingerprint)
    std::vector<std::vector<double>> rows(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) {
        rows[i].resize(g.feature_dim());
        for (std::size_t j = 0; j < g.feature_dim(); ++j) rows[i][j] = g.features().at(i, j);
    }
    std::sort(rows.begin(), rows.end());
    std::vector<double> flat;
    flat.reserve(g.order() * g.feature_dim());
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return flat;
}

bool feature_rows_equal(const FeaturedGraph& a, std::size_t va, const FeaturedGraph& b, std::size_t vb) {
    for (std::size_t j = 0; j < a.feature_dim(); ++j) {
        if (a.features().at(va, j) != b.features().at(vb, j)) return false;
    }
    return true;
}

// Backtracking search for a vertex bijection a -> b preserving adjacency and
// feature rows. Vertices of a are assigned in descending-degree order.
bool find_mapping(const FeaturedGraph& a, const FeaturedGraph& b) {
    const std::size_t n = a.order();
    const auto deg_a = a.degrees();
    const auto deg_b = b.degrees();

    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = std::uint32_t(i);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t x, std::uint32_t y) { return deg_a[x] > deg_a[y]; });

    std::vector<int> map_ab(n, -1);
    std::vector<bool> used_b(n, false);

    std::function<bool(std::size_t)> extend = [&](std::size_t pos) -> bool {
        if (pos == n) return true;
        const std::uint32_t va = order[pos];
        for (std::uint32_t vb = 0; vb < n; ++vb) {
            if (used_b[vb] || deg_a[va] != deg_b[vb] || !feature_rows_equal(a, va, b, vb)) continue;
            bool consistent = true;
            for (std::size_t prev = 0; prev < pos && consistent; ++prev) {
                const std::uint32_t ua = order[prev];
                const std::uint32_t ub = std::uint32_t(map_ab[ua]);
                if (a.has_edge(va, ua) != b.has_edge(vb, ub)) consistent = false;
            }
            if (!consistent) continue;
            map_ab[va] = int(vb);
            used_b[vb] = true;
            if (extend(pos + 1)) return true;
            map_ab[va] = -1;
            used_b[vb] = false;
        }
        return false;
    };
    return extend(0);
}

} // namespace

bool isomorphic(const FeaturedGraph& a, const FeaturedGraph& b) {
    if (a.order() > 12 || b.order() > 12) {
        throw ParameterError("isomorphic: refusing graphs of order > 12");
    }
    if (a.order() != b.order() || a.num_edges() != b.num_edges()) return false;
    if (a.feature_dim() != b.feature_dim()) return false;

    auto deg_a = a.degrees();
    auto deg_b = b.degrees();
    std::sort(deg_a.begin(), deg_a.end());
    std::sort(deg_b.begin(), deg_b.end());
    if (deg_a != deg_b) return false;
    if (sorted_feature_rows(a) != sorted_feature_rows(b)) return false;

    return find_mapping(a, b);
}

std::vector<FeaturedGraph> enumerate_graphs(std::size_t order) {
    if (order < 1 || order > 6) throw ParameterError("enumerate_graphs: order must be in [1, 6]");
    const std::size_t pairs = order * (order - 1) / 2;
    std::vector<FeaturedGraph> reps;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs); ++mask) {
        std::vector<FeaturedGraph::Edge> edges;
        std::size_t bit = 0;
        for (std::uint32_t u = 0; u + 1 < order; ++u)
            for (std::uint32_t v = u + 1; v < order; ++v, ++bit)
                if (mask & (std::uint64_t(1) << bit)) edges.emplace_back(u, v);
        FeaturedGraph g = FeaturedGraph::constant_features(order, std::move(edges));
        bool fresh = true;
        for (const FeaturedGraph& rep : reps) {
            if (isomorphic(rep, g)) {
                fresh = false;
                break;
            }
        }
        if (fresh) reps.push_back(std::move(g));
    }
    return reps;
}

std::vector<FeaturedGraph> enumerate_graphs_up_to(std::size_t order) {
    std::vector<FeaturedGraph> all;
    for (std::size_t n = 1; n <= order; ++n) {
        auto reps = enumerate_graphs(n);
        all.insert(all.end(), std::make_move_iterator(reps.begin()), std::make_move_iterator(reps.end()));
    }
    return all;
}

namespace {

// Greedy multiset matching with per-entry tolerance.
bool multisets_match(const Tensor& a, const Tensor& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    const std::size_t n = a.rows(), d = a.cols();
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        bool matched = false;
        for (std::size_t j = 0; j < n && !matched; ++j) {
            if (used[j]) continue;
            bool close = true;
            for (std::size_t k = 0; k < d && close; ++k) {
                if (std::abs(a.at(i, k) - b.at(j, k)) > tol) close = false;
            }
            if (close) {
                used[j] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace

InjectivityReport check_injectivity(std::size_t order, const VertexEncoder& encoder, double tol) {
    if (order > 6) throw ParameterError("check_injectivity: order must be <= 6");
    InjectivityReport report;
    report.order = order;

    std::vector<FeaturedGraph> graphs = enumerate_graphs_up_to(order);
    report.classes = graphs.size();
    std::vector<Tensor> encodings;
    encodings.reserve(graphs.size());
    for (const FeaturedGraph& g : graphs) encodings.push_back(encoder(g));

    for (std::size_t i = 0; i < graphs.size(); ++i) {
        for (std::size_t j = i + 1; j < graphs.size(); ++j) {
            if (graphs[i].order() != graphs[j].order()) continue; // cardinality separates them
            ++report.pairs_checked;
            if (multisets_match(encodings[i], encodings[j], tol)) {
                report.violations.emplace_back(i, j);
            }
        }
    }
    return report;
}

InjectivityReport check_injectivity(std::size_t order, PeKind kind, double tol) {
    if (kind == PeKind::None) {
        throw ParameterError("check_injectivity: encoder kind must be lappe or rwse");
    }
    return check_injectivity(
        order,
        [kind](const FeaturedGraph& g) {
            return compute_encoding(g, kind, g.order()).values;
        },
        tol);
}

} // namespace graphlab
