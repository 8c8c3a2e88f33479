#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "graphlab/encodings.hpp"
#include "graphlab/graph.hpp"

namespace graphlab {

// Exact isomorphism test (edges and feature rows) by permutation search with
// degree-sequence pruning. Intended for small graphs; refuses order > 12.
bool isomorphic(const FeaturedGraph& a, const FeaturedGraph& b);

// All graphs of exactly the given order, one representative per isomorphism
// class, constant feature 1.
std::vector<FeaturedGraph> enumerate_graphs(std::size_t order);

// All graphs of order 1..order, one representative per class.
std::vector<FeaturedGraph> enumerate_graphs_up_to(std::size_t order);

struct InjectivityReport {
    std::size_t order = 0;
    std::size_t classes = 0;       // number of isomorphism classes enumerated
    std::size_t pairs_checked = 0; // same-order non-isomorphic pairs compared
    // indices into the enumerated class list for each violating pair
    std::vector<std::pair<std::size_t, std::size_t>> violations;

    bool ok() const { return violations.empty(); }
};

using VertexEncoder = std::function<Tensor(const FeaturedGraph&)>;

// Enumerates all graphs up to `order` and reports every non-isomorphic pair
// whose encoding multisets coincide under greedy matching with per-entry
// tolerance `tol`. Multisets of different cardinality are always distinct.
InjectivityReport check_injectivity(std::size_t order, const VertexEncoder& encoder, double tol);

// LapPE variant with the full m = n eigenpair encoding per graph.
InjectivityReport check_injectivity(std::size_t order, PeKind kind, double tol);

} // namespace graphlab
