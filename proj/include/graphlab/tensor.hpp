#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace graphlab {

class Tape;

// Pointwise multiset aggregations used by message passing and readouts.
enum class Agg { Sum, Mean, Max };

// Sorted adjacency lists; the canonical neighbor iteration order is ascending
// vertex index, which fixes the accumulation order of every aggregation.
using AdjList = std::vector<std::vector<std::uint32_t>>;

// Dense real matrix, row-major, 64-bit. Tensors are immutable values: the
// payload is shared on copy and never written after construction. A tensor
// may carry a handle into the Tape that recorded it.
class Tensor {
public:
    Tensor() : Tensor(0, 0) {}
    Tensor(std::size_t rows, std::size_t cols);
    Tensor(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Tensor zeros(std::size_t rows, std::size_t cols) { return Tensor(rows, cols); }
    static Tensor full(std::size_t rows, std::size_t cols, double v);
    static Tensor ones(std::size_t rows, std::size_t cols) { return full(rows, cols, 1.0); }
    static Tensor identity(std::size_t n);
    static Tensor row(std::vector<double> values);
    static Tensor column(std::vector<double> values);
    static Tensor from_rows(const std::vector<std::vector<double>>& rows);
    static Tensor scalar_value(double v) { return Tensor(1, 1, {v}); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return rows_ * cols_; }
    bool empty() const { return size() == 0; }

    double at(std::size_t i, std::size_t j) const { return (*data_)[i * cols_ + j]; }
    // Value of a 1x1 tensor; contract error otherwise.
    double scalar() const;
    const std::vector<double>& values() const { return *data_; }
    const double* raw() const { return data_->data(); }

    bool recorded() const { return node_ >= 0; }
    int node() const { return node_; }
    Tape* tape() const { return tape_; }

    bool same_shape(const Tensor& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
    bool all_finite() const;
    double max_abs() const;

private:
    friend class Tape;
    friend struct TapeOps;
    std::size_t rows_, cols_;
    std::shared_ptr<const std::vector<double>> data_;
    Tape* tape_ = nullptr;
    int node_ = -1;
};

// Reverse-mode computation record. Operations append themselves in execution
// order (inputs always precede consumers); backward() walks the record in
// reverse, accumulating gradients in that fixed order. A Tape must not be
// shared between threads; independent evaluations use independent tapes.
class Tape {
public:
    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    // Registers a leaf whose gradient will be tracked.
    Tensor variable(const Tensor& value);

    // Gradient of a recorded scalar w.r.t. every recorded tensor.
    void backward(const Tensor& output);

    // Gradient buffer of a recorded tensor (zeros if it did not influence the
    // output). Requires a prior backward().
    Tensor grad(const Tensor& t) const;

    std::size_t num_nodes() const { return shapes_.size(); }
    std::size_t num_ops() const { return records_.size(); }

    // Implementation detail of the recorded primitives below; not part of the
    // public surface.
    enum class Op : std::uint8_t {
        MatMul,
        Transpose,
        Add,
        Sub,
        Scale,
        Relu,
        Abs,
        RowSoftmax,
        AddRowVector,
        ConcatCols,
        ReduceRows,
        BroadcastRows,
        ReduceSum,
        NeighborAgg,
        LayerNorm,
    };

    struct Shape {
        std::size_t rows, cols;
    };

    struct Record {
        Op op;
        int out = -1;
        int a = -1;
        int b = -1;
        int c = -1;
        double factor = 0.0;
        Agg agg = Agg::Sum;
        std::shared_ptr<const AdjList> adj;
        Tensor saved0, saved1, saved2;
        std::vector<std::uint32_t> indices; // argmax bookkeeping for Max aggregations
    };

private:
    friend struct TapeOps;

    int add_node(const Tensor& t);
    int intern(const Tensor& t); // existing node or fresh constant leaf

    std::vector<Shape> shapes_;
    std::vector<Record> records_;
    std::vector<std::vector<double>> grads_;
    bool has_grads_ = false;
};

// --- primitives (recorded when any input is recorded) ---

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);
Tensor add(const Tensor& a, const Tensor& b);
Tensor subtract(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);
Tensor relu(const Tensor& a);
Tensor abs_elementwise(const Tensor& a);
// Row-wise softmax with row-max subtraction; each output row sums to 1.
Tensor row_softmax(const Tensor& a);
// x (n x d) + bias row (1 x d), broadcast over rows.
Tensor add_row_vector(const Tensor& x, const Tensor& bias);
Tensor concat_cols(const Tensor& a, const Tensor& b);
// Aggregate all rows into a single row; an empty input yields zeros(1, d).
Tensor reduce_rows(const Tensor& a, Agg kind);
Tensor broadcast_rows(const Tensor& v, std::size_t n);
Tensor reduce_sum(const Tensor& a); // 1x1
// Per-vertex aggregation over sorted neighbor lists; vertices with no
// neighbors receive the zero vector.
Tensor neighbor_aggregate(const std::shared_ptr<const AdjList>& adj, const Tensor& z, Agg kind);
// Row-wise layer normalization with learnable gain/bias (1 x d each).
Tensor layer_norm_rows(const Tensor& x, const Tensor& gain, const Tensor& bias, double eps = 1e-5);

// Pointwise aggregate of a multiset of equal-length vectors (as tensor rows,
// iterated in row order). The empty multiset maps to the zero vector.
Tensor aggregate(const std::vector<std::vector<double>>& rows, std::size_t dim, Agg kind);

} // namespace graphlab
