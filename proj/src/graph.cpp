#include "graphlab/graph.hpp"

#include <algorithm>
#include <cmath>

#include "graphlab/errors.hpp"
#include "graphlab/rng.hpp"

namespace graphlab {

FeaturedGraph::FeaturedGraph(std::size_t n, std::vector<Edge> edges, Tensor features)
    : n_(n), features_(std::move(features)) {
    if (features_.rows() != n) {
        throw DimensionError("feature matrix has " + std::to_string(features_.rows()) +
                             " rows for " + std::to_string(n) + " vertices");
    }
    for (auto& [u, v] : edges) {
        if (u >= n || v >= n) throw ParameterError("edge endpoint out of range");
        if (u == v) throw ParameterError("self-loops are not allowed");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    auto adj = std::make_shared<AdjList>(n);
    for (const auto& [u, v] : edges_) {
        (*adj)[u].push_back(v);
        (*adj)[v].push_back(u);
    }
    for (auto& nb : *adj) std::sort(nb.begin(), nb.end());
    adj_ = std::move(adj);
}

FeaturedGraph FeaturedGraph::constant_features(std::size_t n, std::vector<Edge> edges, double value) {
    return FeaturedGraph(n, std::move(edges), Tensor::full(n, 1, value));
}

bool FeaturedGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::vector<std::size_t> FeaturedGraph::degrees() const {
    std::vector<std::size_t> deg(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) deg[v] = (*adj_)[v].size();
    return deg;
}

FeaturedGraph FeaturedGraph::with_features(Tensor features) const {
    return FeaturedGraph(n_, edges_, std::move(features));
}

FeaturedGraph FeaturedGraph::permuted(const std::vector<std::uint32_t>& perm) const {
    if (perm.size() != n_) throw ParameterError("permutation size mismatch");
    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    for (const auto& [u, v] : edges_) edges.emplace_back(perm[u], perm[v]);
    std::vector<double> feat(n_ * feature_dim());
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < feature_dim(); ++j)
            feat[std::size_t(perm[i]) * feature_dim() + j] = features_.at(i, j);
    return FeaturedGraph(n_, std::move(edges), Tensor(n_, feature_dim(), std::move(feat)));
}

FeaturedGraph gen_erdos_renyi(std::size_t n, double mean_degree, std::uint64_t seed) {
    if (n < 1) throw ParameterError("gen_erdos_renyi: n must be >= 1");
    if (mean_degree < 0.0 || double(n) <= mean_degree) {
        throw ParameterError("gen_erdos_renyi: mean_degree must be in [0, n)");
    }
    std::vector<FeaturedGraph::Edge> edges;
    if (n >= 2) {
        const double p = mean_degree / double(n - 1);
        SplitMix64 rng(seed);
        for (std::uint32_t u = 0; u + 1 < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v)
                if (rng.uniform() < p) edges.emplace_back(u, v);
    }
    return FeaturedGraph::constant_features(n, std::move(edges));
}

FeaturedGraph make_gn(std::size_t n) {
    if (n < 1) throw ParameterError("make_gn: n must be >= 1");
    return FeaturedGraph::constant_features(n, {});
}

FeaturedGraph make_glr(std::size_t l, std::size_t r, const GlrEdgeMode& mode) {
    if (l < 1 || r < 1) throw ParameterError("make_glr: l and r must be >= 1");
    const std::size_t n = l + l * r;
    std::vector<double> feat(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        feat[i * 2] = 2.0;
        feat[i * 2 + 1] = i < l ? 1.0 : 2.0;
    }
    std::vector<FeaturedGraph::Edge> edges;
    if (mode.erdos_renyi && n >= 2) {
        edges = gen_erdos_renyi(n, std::min(mode.mean_degree, double(n - 1)), mode.seed).edges();
    }
    return FeaturedGraph(n, std::move(edges), Tensor(n, 2, std::move(feat)));
}

double target_square(const FeaturedGraph& g) {
    const double n = double(g.order());
    return n * n;
}

double target_h(std::size_t l, std::size_t r) {
    if (l < 1 || r < 1) throw ParameterError("target_h: l and r must be >= 1");
    static const double e9 = std::exp(9.0);
    static const double e12 = std::exp(12.0);
    const double rd = double(r);
    return double(l) * (2.0 + 1.0 / (1.0 + rd * e9) + 2.0 * rd + rd / (1.0 + rd * e12));
}

} // namespace graphlab
