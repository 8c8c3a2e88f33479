#pragma once

#include <vector>

#include "graphlab/graph.hpp"
#include "graphlab/tensor.hpp"

namespace graphlab {

// Eigenvalues ascending; eigenvectors as the columns of an orthonormal matrix,
// each with its first entry of magnitude > 1e-8 made positive.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Tensor vectors;
};

// L = D - A.
Tensor laplacian(const FeaturedGraph& g);

// Cyclic Jacobi sweeps until max |off-diagonal| < 1e-12 or 100 sweeps.
// Throws ContractError if the input is not symmetric within 1e-12.
EigenDecomposition sym_eig(const Tensor& m);

} // namespace graphlab
