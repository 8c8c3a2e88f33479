#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "graphlab/graph.hpp"

namespace graphlab {

// A list of (graph, target) pairs. The provenance string records generator
// name, seed and parameter ranges; regenerating from it reproduces the data.
struct Dataset {
    struct Item {
        FeaturedGraph graph;
        std::vector<double> target;
    };
    std::vector<Item> items;
    std::string provenance;

    std::size_t size() const { return items.size(); }
};

bool operator==(const Dataset& a, const Dataset& b);

// Text format, one graph per block:
//   G n m p
//   m lines "u v" (0-based)
//   n lines of p space-separated reals
//   T q t1 ... tq
// '#'-prefixed comment lines are allowed anywhere between tokens; the
// provenance is stored as a "# provenance: ..." comment. Reals are printed
// with shortest round-trip formatting.
void write_dataset(const Dataset& ds, const std::filesystem::path& path);
Dataset read_dataset(const std::filesystem::path& path);

} // namespace graphlab
