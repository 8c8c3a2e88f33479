#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "graphlab/tensor.hpp"

namespace graphlab {

// Undirected featured graph: n vertices named 0..n-1, a canonical edge set
// (u < v, sorted, no duplicates, no self-loops) and an n x p feature matrix.
class FeaturedGraph {
public:
    using Edge = std::pair<std::uint32_t, std::uint32_t>;

    FeaturedGraph() = default;
    // Canonicalizes the edge list and validates endpoints and feature shape.
    FeaturedGraph(std::size_t n, std::vector<Edge> edges, Tensor features);

    static FeaturedGraph constant_features(std::size_t n, std::vector<Edge> edges, double value = 1.0);

    std::size_t order() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Tensor& features() const { return features_; }
    std::size_t feature_dim() const { return features_.cols(); }

    bool has_edge(std::uint32_t u, std::uint32_t v) const;
    std::vector<std::size_t> degrees() const;

    // Sorted adjacency lists, built once per graph and shared with the
    // recorded aggregation ops.
    const std::shared_ptr<const AdjList>& adjacency() const { return adj_; }

    FeaturedGraph with_features(Tensor features) const;
    // Relabels vertex i as perm[i].
    FeaturedGraph permuted(const std::vector<std::uint32_t>& perm) const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    Tensor features_;
    std::shared_ptr<const AdjList> adj_;
};

// Erdos-Renyi graph: every pair kept with probability mean_degree/(n-1),
// constant feature 1 per vertex. Deterministic in the seed.
FeaturedGraph gen_erdos_renyi(std::size_t n, double mean_degree, std::uint64_t seed);

// Edgeless n-vertex graph with constant feature 1 (the PE-featured variant
// lives in encodings.hpp).
FeaturedGraph make_gn(std::size_t n);

struct GlrEdgeMode {
    bool erdos_renyi = false;
    std::uint64_t seed = 0;
    double mean_degree = 0.0;

    static GlrEdgeMode empty() { return {}; }
    static GlrEdgeMode er(std::uint64_t seed, double mean_degree) {
        return {true, seed, mean_degree};
    }
};

// l vertices with feature (2,1) followed by l*r vertices with feature (2,2).
FeaturedGraph make_glr(std::size_t l, std::size_t r, const GlrEdgeMode& mode = GlrEdgeMode::empty());

double target_square(const FeaturedGraph& g);
// h(G_{l,r}) evaluated in the algebraically equivalent stable form
// l*(2 + 1/(1+r e^9) + 2r + r/(1+r e^12)).
double target_h(std::size_t l, std::size_t r);

} // namespace graphlab
