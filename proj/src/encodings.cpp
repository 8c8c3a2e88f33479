#include "graphlab/encodings.hpp"

#include <cmath>

#include "graphlab/errors.hpp"
#include "graphlab/spectral.hpp"

namespace graphlab {

std::string to_string(PeKind kind) {
    switch (kind) {
    case PeKind::None: return "none";
    case PeKind::LapPE: return "lappe";
    case PeKind::Rwse: return "rwse";
    }
    return "none";
}

PeKind pe_kind_from_string(const std::string& s) {
    if (s == "none") return PeKind::None;
    if (s == "lappe") return PeKind::LapPE;
    if (s == "rwse") return PeKind::Rwse;
    throw ParameterError("unknown positional encoding kind '" + s + "'");
}

EncodingMatrix lappe(const FeaturedGraph& g, std::size_t m) {
    const std::size_t n = g.order();
    if (m < 1) throw ParameterError("lappe: m must be >= 1");
    EigenDecomposition dec = sym_eig(laplacian(g));
    const std::size_t avail = std::min(m, n);
    std::vector<double> d(n * 2 * m, 0.0);
    const double inv_n = 1.0 / double(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < avail; ++i) {
            d[v * 2 * m + 2 * i] = dec.eigenvalues[i] * inv_n; // lambda <= n for Laplacians
            d[v * 2 * m + 2 * i + 1] = dec.vectors.at(v, i);
        }
    }
    return {Tensor(n, 2 * m, std::move(d)), PeKind::LapPE, m, -1.0, 1.0};
}

EncodingMatrix rwse(const FeaturedGraph& g, std::size_t k) {
    if (k < 1) throw ParameterError("rwse: k must be >= 1");
    const std::size_t n = g.order();
    // walk matrix W = D^-1 A (rows of isolated vertices stay zero)
    std::vector<double> walk(n * n, 0.0);
    const AdjList& adj = *g.adjacency();
    for (std::size_t v = 0; v < n; ++v) {
        if (adj[v].empty()) continue;
        const double p = 1.0 / double(adj[v].size());
        for (std::uint32_t u : adj[v]) walk[v * n + u] = p;
    }
    Tensor w(n, n, std::move(walk));
    Tensor power = w;
    std::vector<double> d(n * k, 0.0);
    for (std::size_t t = 0; t < k; ++t) {
        if (t > 0) power = matmul(power, w);
        for (std::size_t v = 0; v < n; ++v) d[v * k + t] = power.at(v, v);
    }
    return {Tensor(n, k, std::move(d)), PeKind::Rwse, k, 0.0, 1.0};
}

EncodingMatrix compute_encoding(const FeaturedGraph& g, PeKind kind, std::size_t dim) {
    switch (kind) {
    case PeKind::LapPE: return lappe(g, dim);
    case PeKind::Rwse: return rwse(g, dim);
    case PeKind::None: break;
    }
    throw ParameterError("compute_encoding: kind must be lappe or rwse");
}

FeaturedGraph attach_encoding(const FeaturedGraph& g, const EncodingMatrix& enc) {
    if (enc.values.rows() != g.order()) {
        throw DimensionError("encoding rows do not match graph order");
    }
    return g.with_features(concat_cols(g.features(), enc.values));
}

FeaturedGraph make_gn(std::size_t n, PeKind kind, std::size_t dim) {
    FeaturedGraph g = make_gn(n);
    if (kind == PeKind::None) return g;
    return g.with_features(compute_encoding(g, kind, dim).values);
}

double multiset_hash(const std::vector<std::size_t>& multiset, std::size_t alphabet_size,
                     std::size_t max_size) {
    if (max_size < 1) throw ParameterError("multiset_hash: max size n must be >= 1");
    if (multiset.size() > max_size) {
        throw ParameterError("multiset_hash: multiset larger than declared max size");
    }
    std::size_t ell = 1;
    while ((std::size_t(1) << ell) <= max_size) ++ell; // ell = floor(log2 n) + 1
    if (alphabet_size * ell > 50) {
        throw PrecisionError("multiset_hash: k*l = " + std::to_string(alphabet_size * ell) +
                             " > 50 exceeds the double mantissa; values would collide");
    }
    std::vector<std::size_t> counts(alphabet_size + 1, 0);
    for (std::size_t x : multiset) {
        if (x < 1 || x > alphabet_size) throw ParameterError("multiset_hash: element index out of [1,k]");
        ++counts[x];
    }
    double h = 0.0;
    for (std::size_t j = alphabet_size; j >= 1; --j) {
        h += double(counts[j]) * std::ldexp(1.0, -int(j * ell)); // exact: k*l <= 50 bits
    }
    return h;
}

} // namespace graphlab
