#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphlab/graph.hpp"
#include "graphlab/tensor.hpp"

namespace graphlab {

enum class PeKind { None, LapPE, Rwse };

std::string to_string(PeKind kind);
PeKind pe_kind_from_string(const std::string& s);

// Per-vertex positional/structural encoding matrix.
struct EncodingMatrix {
    Tensor values; // n x k
    PeKind kind = PeKind::None;
    std::size_t dim_param = 0; // m eigenpairs for LapPE, k steps for RWSE
    double clamp_lo = -1.0, clamp_hi = 1.0;
};

// Interleaved (eigenvalue, eigenvector entry) pairs of the first m eigenpairs
// of L = D - A, eigenvalues rescaled by 1/n so every entry lies in [-1, 1].
// Pads with zeros when m exceeds the number of available pairs.
EncodingMatrix lappe(const FeaturedGraph& g, std::size_t m);

// t-step random-walk return probabilities ((D^-1 A)^t)_vv for t = 1..k;
// isolated vertices get 0.
EncodingMatrix rwse(const FeaturedGraph& g, std::size_t k);

EncodingMatrix compute_encoding(const FeaturedGraph& g, PeKind kind, std::size_t dim);

// Concatenates the encoding columns onto the graph's features.
FeaturedGraph attach_encoding(const FeaturedGraph& g, const EncodingMatrix& enc);

// Edgeless n-vertex graph featured with Enc(G_n) (or constant 1 when None).
FeaturedGraph make_gn(std::size_t n, PeKind kind, std::size_t dim);

// Injective multiset hash H(M) = sum_j m_j 2^(-j*l) with l = floor(log2 n)+1.
// `multiset` holds 1-based element indices over an alphabet of size k; its
// size must be at most n. Throws PrecisionError when k*l > 50 (the separation
// 2^(-k*l) would fall below double precision).
double multiset_hash(const std::vector<std::size_t>& multiset, std::size_t alphabet_size,
                     std::size_t max_size);

} // namespace graphlab
