#include "graphlab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "graphlab/errors.hpp"

namespace graphlab {

namespace {

std::string shape_str(const Tensor& t) {
    return std::to_string(t.rows()) + "x" + std::to_string(t.cols());
}

// Compensated (Kahan) accumulator; reductions are cheap relative to the
// matrix products, and the exact-construction checks need the headroom.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

} // namespace

// ---------------------------------------------------------------------------
// Tensor
// ---------------------------------------------------------------------------

Tensor::Tensor(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols),
      data_(std::make_shared<const std::vector<double>>(rows * cols, 0.0)) {}

Tensor::Tensor(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols) {
    if (data.size() != rows * cols) {
        throw DimensionError("tensor data length " + std::to_string(data.size()) +
                             " does not match shape " + std::to_string(rows) + "x" +
                             std::to_string(cols));
    }
    data_ = std::make_shared<const std::vector<double>>(std::move(data));
}

Tensor Tensor::full(std::size_t rows, std::size_t cols, double v) {
    return Tensor(rows, cols, std::vector<double>(rows * cols, v));
}

Tensor Tensor::identity(std::size_t n) {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
    return Tensor(n, n, std::move(d));
}

Tensor Tensor::row(std::vector<double> values) {
    std::size_t n = values.size();
    return Tensor(1, n, std::move(values));
}

Tensor Tensor::column(std::vector<double> values) {
    std::size_t n = values.size();
    return Tensor(n, 1, std::move(values));
}

Tensor Tensor::from_rows(const std::vector<std::vector<double>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    std::vector<double> d;
    d.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("ragged rows in from_rows");
        d.insert(d.end(), row.begin(), row.end());
    }
    return Tensor(r, c, std::move(d));
}

double Tensor::scalar() const {
    if (rows_ != 1 || cols_ != 1) {
        throw ContractError("scalar() requires a 1x1 tensor, got " + shape_str(*this));
    }
    return (*data_)[0];
}

bool Tensor::all_finite() const {
    for (double v : *data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double Tensor::max_abs() const {
    double m = 0.0;
    for (double v : *data_) m = std::max(m, std::abs(v));
    return m;
}

// ---------------------------------------------------------------------------
// Value kernels (no recording)
// ---------------------------------------------------------------------------

namespace kernels {

std::vector<double> matmul(const Tensor& a, const Tensor& b) {
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    std::vector<double> out(m * n, 0.0);
    const double* pa = a.raw();
    const double* pb = b.raw();
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = out.data() + i * n;
        const double* arow = pa + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const double av = arow[p];
            if (av == 0.0) continue;
            const double* brow = pb + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
    return out;
}

std::vector<double> transpose(const Tensor& a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<double> out(m * n);
    const double* p = a.raw();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out[j * m + i] = p[i * n + j];
    return out;
}

void softmax_row(const double* in, double* out, std::size_t n) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) mx = std::max(mx, in[j]);
    KahanSum sum;
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = std::exp(in[j] - mx);
        sum.add(out[j]);
    }
    const double inv = 1.0 / sum.value();
    for (std::size_t j = 0; j < n; ++j) out[j] *= inv;
}

// Aggregates the rows of z selected by idx into out[0..d).
// For Max, argmax[j] records which selected row won column j.
void aggregate_rows(const double* z, std::size_t d, const std::uint32_t* idx, std::size_t cnt,
                    Agg kind, double* out, std::uint32_t* argmax) {
    if (cnt == 0) {
        std::fill(out, out + d, 0.0);
        if (argmax) std::fill(argmax, argmax + d, std::uint32_t(-1));
        return;
    }
    switch (kind) {
    case Agg::Sum:
    case Agg::Mean: {
        std::vector<KahanSum> acc(d);
        for (std::size_t t = 0; t < cnt; ++t) {
            const double* row = z + std::size_t(idx[t]) * d;
            for (std::size_t j = 0; j < d; ++j) acc[j].add(row[j]);
        }
        const double f = kind == Agg::Mean ? 1.0 / double(cnt) : 1.0;
        for (std::size_t j = 0; j < d; ++j) out[j] = acc[j].value() * f;
        break;
    }
    case Agg::Max: {
        const double* first = z + std::size_t(idx[0]) * d;
        std::copy(first, first + d, out);
        if (argmax)
            for (std::size_t j = 0; j < d; ++j) argmax[j] = idx[0];
        for (std::size_t t = 1; t < cnt; ++t) {
            const double* row = z + std::size_t(idx[t]) * d;
            for (std::size_t j = 0; j < d; ++j) {
                if (row[j] > out[j]) {
                    out[j] = row[j];
                    if (argmax) argmax[j] = idx[t];
                }
            }
        }
        break;
    }
    }
}

} // namespace kernels

Tensor aggregate(const std::vector<std::vector<double>>& rows, std::size_t dim, Agg kind) {
    for (const auto& r : rows) {
        if (r.size() != dim)
            throw DimensionError("aggregate: vector of length " + std::to_string(r.size()) +
                                 ", expected " + std::to_string(dim));
    }
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    std::vector<std::uint32_t> idx(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        idx[i] = std::uint32_t(i);
        flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    std::vector<double> out(dim, 0.0);
    kernels::aggregate_rows(flat.data(), dim, idx.data(), idx.size(), kind, out.data(), nullptr);
    return Tensor(1, dim, std::move(out));
}

// ---------------------------------------------------------------------------
// Tape
// ---------------------------------------------------------------------------

int Tape::add_node(const Tensor& t) {
    shapes_.push_back({t.rows(), t.cols()});
    return int(shapes_.size()) - 1;
}

int Tape::intern(const Tensor& t) {
    if (t.recorded()) {
        if (t.tape() != this) throw ContractError("tensor belongs to a different computation record");
        return t.node();
    }
    return add_node(t);
}

Tensor Tape::variable(const Tensor& value) {
    if (value.recorded()) {
        if (value.tape() != this) throw ContractError("tensor belongs to a different computation record");
        return value;
    }
    Tensor v = value;
    v.tape_ = this;
    v.node_ = add_node(value);
    return v;
}

// Single friend through which the free-function primitives talk to the tape.
struct TapeOps {
    static Tape* result_tape(const Tensor& a) { return a.tape(); }

    static Tape* result_tape(const Tensor& a, const Tensor& b) {
        Tape* t = a.tape();
        if (b.recorded()) {
            if (t && t != b.tape()) throw ContractError("operands recorded on different tapes");
            t = b.tape();
        }
        return t;
    }

    static Tape* result_tape(const Tensor& a, const Tensor& b, const Tensor& c) {
        Tape* t = result_tape(a, b);
        if (c.recorded()) {
            if (t && t != c.tape()) throw ContractError("operands recorded on different tapes");
            t = c.tape();
        }
        return t;
    }

    static void record(Tape* tape, Tape::Record rec, const Tensor* a, const Tensor* b,
                       const Tensor* c, Tensor& out) {
        if (!tape) return;
        rec.a = a ? tape->intern(*a) : -1;
        rec.b = b ? tape->intern(*b) : -1;
        rec.c = c ? tape->intern(*c) : -1;
        rec.out = tape->add_node(out);
        out.tape_ = tape;
        out.node_ = rec.out;
        tape->records_.push_back(std::move(rec));
    }
};

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: " + shape_str(a) + " by " + shape_str(b));
    }
    Tensor out(a.rows(), b.cols(), kernels::matmul(a, b));
    if (Tape* tape = TapeOps::result_tape(a, b)) {
        Tape::Record rec;
        rec.op = Tape::Op::MatMul;
        rec.saved0 = a;
        rec.saved1 = b;
        TapeOps::record(tape, std::move(rec), &a, &b, nullptr, out);
    }
    return out;
}

Tensor transpose(const Tensor& a) {
    Tensor out(a.cols(), a.rows(), kernels::transpose(a));
    if (Tape* tape = TapeOps::result_tape(a)) {
        Tape::Record rec;
        rec.op = Tape::Op::Transpose;
        TapeOps::record(tape, std::move(rec), &a, nullptr, nullptr, out);
    }
    return out;
}

namespace {

Tensor binary_pointwise(const Tensor& a, const Tensor& b, Tape::Op op, const char* name) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(name) + ": " + shape_str(a) + " vs " + shape_str(b));
    }
    std::vector<double> d(a.size());
    const double* pa = a.raw();
    const double* pb = b.raw();
    if (op == Tape::Op::Add) {
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = pa[i] + pb[i];
    } else {
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = pa[i] - pb[i];
    }
    Tensor out(a.rows(), a.cols(), std::move(d));
    if (Tape* tape = TapeOps::result_tape(a, b)) {
        Tape::Record rec;
        rec.op = op;
        TapeOps::record(tape, std::move(rec), &a, &b, nullptr, out);
    }
    return out;
}

} // namespace

Tensor add(const Tensor& a, const Tensor& b) { return binary_pointwise(a, b, Tape::Op::Add, "add"); }

Tensor subtract(const Tensor& a, const Tensor& b) {
    return binary_pointwise(a, b, Tape::Op::Sub, "subtract");
}

Tensor scale(const Tensor& a, double factor) {
    std::vector<double> d(a.size());
    const double* pa = a.raw();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = pa[i] * factor;
    Tensor out(a.rows(), a.cols(), std::move(d));
    if (Tape* tape = TapeOps::result_tape(a)) {
        Tape::Record rec;
        rec.op = Tape::Op::Scale;
        rec.factor = factor;
        TapeOps::record(tape, std::move(rec), &a, nullptr, nullptr, out);
    }
    return out;
}

Tensor relu(const Tensor& a) {
    std::vector<double> d(a.size());
    const double* pa = a.raw();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = pa[i] > 0.0 ? pa[i] : 0.0;
    Tensor out(a.rows(), a.cols(), std::move(d));
    if (Tape* tape = TapeOps::result_tape(a)) {
        Tape::Record rec;
        rec.op = Tape::Op::Relu;
        rec.saved0 = a;
        TapeOps::record(tape, std::move(rec), &a, nullptr, nullptr, out);
    }
    return out;
}

Tensor abs_elementwise(const Tensor& a) {
    std::vector<double> d(a.size());
    const double* pa = a.raw();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(pa[i]);
    Tensor out(a.rows(), a.cols(), std::move(d));
    if (Tape* tape = TapeOps::result_tape(a)) {
        Tape::Record rec;
        rec.op = Tape::Op::Abs;
        rec.saved0 = a;
        TapeOps::record(tape, std::move(rec), &a, nullptr, nullptr, out);
    }
    return out;
}

Tensor row_softmax(const Tensor& a) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        kernels::softmax_row(a.raw() + i * a.cols(), d.data() + i * a.cols(), a.cols());
    }
    Tensor out(a.rows(), a.cols(), std::move(d));
    if (Tape* tape = TapeOps::result_tape(a)) {
        Tape::Record rec;
        rec.op = Tape::Op::RowSoftmax;
        rec.saved0 = out; // backward needs the outputs only
        TapeOps::record(tape, std::move(rec), &a, nullptr, nullptr, out);
    }
    return out;
}

Tensor add_row_vector(const Tensor& x, const Tensor& bias) {
    if (bias.rows() != 1 || bias.cols() != x.cols()) {
        throw DimensionError("add_row_vector: " + shape_str(x) + " + " + shape_str(bias));
    }
    std::vector<double> d(x.size());
    const double* px = x.raw();
    const double* pb = bias.raw();
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) d[i * x.cols() + j] = px[i * x.cols() + j] + pb[j];
    Tensor out(x.rows(), x.cols(), std::move(d));
    if (Tape* tape = TapeOps::result_tape(x, bias)) {
        Tape::Record rec;
        rec.op = Tape::Op::AddRowVector;
        TapeOps::record(tape, std::move(rec), &x, &bias, nullptr, out);
    }
    return out;
}

Tensor concat_cols(const Tensor& a, const Tensor& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("concat_cols: " + shape_str(a) + " with " + shape_str(b));
    }
    const std::size_t n = a.rows(), ca = a.cols(), cb = b.cols();
    std::vector<double> d(n * (ca + cb));
    for (std::size_t i = 0; i < n; ++i) {
        std::memcpy(d.data() + i * (ca + cb), a.raw() + i * ca, ca * sizeof(double));
        std::memcpy(d.data() + i * (ca + cb) + ca, b.raw() + i * cb, cb * sizeof(double));
    }
    Tensor out(n, ca + cb, std::move(d));
    if (Tape* tape = TapeOps::result_tape(a, b)) {
        Tape::Record rec;
        rec.op = Tape::Op::ConcatCols;
        rec.factor = double(ca); // split point
        TapeOps::record(tape, std::move(rec), &a, &b, nullptr, out);
    }
    return out;
}

Tensor reduce_rows(const Tensor& a, Agg kind) {
    const std::size_t d = a.cols();
    std::vector<double> out(d, 0.0);
    std::vector<std::uint32_t> idx(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) idx[i] = std::uint32_t(i);
    std::vector<std::uint32_t> argmax(kind == Agg::Max ? d : 0);
    kernels::aggregate_rows(a.raw(), d, idx.data(), idx.size(), kind, out.data(),
                            kind == Agg::Max ? argmax.data() : nullptr);
    Tensor res(1, d, std::move(out));
    if (Tape* tape = TapeOps::result_tape(a)) {
        Tape::Record rec;
        rec.op = Tape::Op::ReduceRows;
        rec.agg = kind;
        rec.indices = std::move(argmax);
        TapeOps::record(tape, std::move(rec), &a, nullptr, nullptr, res);
    }
    return res;
}

Tensor broadcast_rows(const Tensor& v, std::size_t n) {
    if (v.rows() != 1) throw DimensionError("broadcast_rows expects a 1xd tensor, got " + shape_str(v));
    std::vector<double> d(n * v.cols());
    for (std::size_t i = 0; i < n; ++i)
        std::memcpy(d.data() + i * v.cols(), v.raw(), v.cols() * sizeof(double));
    Tensor out(n, v.cols(), std::move(d));
    if (Tape* tape = TapeOps::result_tape(v)) {
        Tape::Record rec;
        rec.op = Tape::Op::BroadcastRows;
        TapeOps::record(tape, std::move(rec), &v, nullptr, nullptr, out);
    }
    return out;
}

Tensor reduce_sum(const Tensor& a) {
    KahanSum s;
    for (double v : a.values()) s.add(v);
    Tensor out(1, 1, {s.value()});
    if (Tape* tape = TapeOps::result_tape(a)) {
        Tape::Record rec;
        rec.op = Tape::Op::ReduceSum;
        TapeOps::record(tape, std::move(rec), &a, nullptr, nullptr, out);
    }
    return out;
}

Tensor neighbor_aggregate(const std::shared_ptr<const AdjList>& adj, const Tensor& z, Agg kind) {
    if (!adj) throw ParameterError("neighbor_aggregate: null adjacency");
    if (adj->size() != z.rows()) {
        throw DimensionError("neighbor_aggregate: adjacency for " + std::to_string(adj->size()) +
                             " vertices, features " + shape_str(z));
    }
    const std::size_t n = z.rows(), d = z.cols();
    std::vector<double> out(n * d, 0.0);
    std::vector<std::uint32_t> argmax(kind == Agg::Max ? n * d : 0);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& nb = (*adj)[v];
        kernels::aggregate_rows(z.raw(), d, nb.data(), nb.size(), kind, out.data() + v * d,
                                kind == Agg::Max ? argmax.data() + v * d : nullptr);
    }
    Tensor res(n, d, std::move(out));
    if (Tape* tape = TapeOps::result_tape(z)) {
        Tape::Record rec;
        rec.op = Tape::Op::NeighborAgg;
        rec.agg = kind;
        rec.adj = adj;
        rec.indices = std::move(argmax);
        TapeOps::record(tape, std::move(rec), &z, nullptr, nullptr, res);
    }
    return res;
}

Tensor layer_norm_rows(const Tensor& x, const Tensor& gain, const Tensor& bias, double eps) {
    const std::size_t n = x.rows(), d = x.cols();
    if (gain.rows() != 1 || gain.cols() != d || bias.rows() != 1 || bias.cols() != d) {
        throw DimensionError("layer_norm_rows: gain/bias must be 1x" + std::to_string(d));
    }
    std::vector<double> out(n * d);
    std::vector<double> xhat(n * d);
    std::vector<double> inv_std(n);
    const double* px = x.raw();
    const double* pg = gain.raw();
    const double* pb = bias.raw();
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = px + i * d;
        KahanSum mean_acc;
        for (std::size_t j = 0; j < d; ++j) mean_acc.add(row[j]);
        const double mean = mean_acc.value() / double(d);
        KahanSum var_acc;
        for (std::size_t j = 0; j < d; ++j) var_acc.add((row[j] - mean) * (row[j] - mean));
        const double var = var_acc.value() / double(d);
        const double is = 1.0 / std::sqrt(var + eps);
        inv_std[i] = is;
        for (std::size_t j = 0; j < d; ++j) {
            const double xh = (row[j] - mean) * is;
            xhat[i * d + j] = xh;
            out[i * d + j] = pg[j] * xh + pb[j];
        }
    }
    Tensor res(n, d, std::move(out));
    if (Tape* tape = TapeOps::result_tape(x, gain, bias)) {
        Tape::Record rec;
        rec.op = Tape::Op::LayerNorm;
        rec.factor = eps;
        rec.saved0 = Tensor(n, d, std::move(xhat));
        rec.saved1 = Tensor(n, 1, std::move(inv_std));
        rec.saved2 = gain;
        TapeOps::record(tape, std::move(rec), &x, &gain, &bias, res);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Backward
// ---------------------------------------------------------------------------

void Tape::backward(const Tensor& output) {
    if (!output.recorded() || output.tape() != this) {
        throw ContractError("backward: output is not recorded on this tape");
    }
    if (output.rows() != 1 || output.cols() != 1) {
        throw ContractError("backward: output must be scalar (1x1)");
    }
    grads_.assign(shapes_.size(), {});
    for (std::size_t i = 0; i < shapes_.size(); ++i) {
        grads_[i].assign(shapes_[i].rows * shapes_[i].cols, 0.0);
    }
    grads_[output.node()][0] = 1.0;
    has_grads_ = true;

    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
        const Record& r = *it;
        const std::vector<double>& go = grads_[r.out];
        const Shape out_shape = shapes_[r.out];
        switch (r.op) {
        case Op::MatMul: {
            // dA = dC * B^T ; dB = A^T * dC
            const Tensor& A = r.saved0;
            const Tensor& B = r.saved1;
            const std::size_t m = A.rows(), k = A.cols(), n = B.cols();
            std::vector<double>& ga = grads_[r.a];
            std::vector<double>& gb = grads_[r.b];
            const double* pb = B.raw();
            const double* pa = A.raw();
            for (std::size_t i = 0; i < m; ++i) {
                const double* grow = go.data() + i * n;
                for (std::size_t p = 0; p < k; ++p) {
                    const double* brow = pb + p * n;
                    double acc = 0.0;
                    for (std::size_t j = 0; j < n; ++j) acc += grow[j] * brow[j];
                    ga[i * k + p] += acc;
                }
            }
            for (std::size_t p = 0; p < k; ++p) {
                double* gbrow = gb.data() + p * n;
                for (std::size_t i = 0; i < m; ++i) {
                    const double av = pa[i * k + p];
                    if (av == 0.0) continue;
                    const double* grow = go.data() + i * n;
                    for (std::size_t j = 0; j < n; ++j) gbrow[j] += av * grow[j];
                }
            }
            break;
        }
        case Op::Transpose: {
            std::vector<double>& ga = grads_[r.a];
            const std::size_t m = out_shape.rows, n = out_shape.cols; // out is n(a) x m(a)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) ga[j * m + i] += go[i * n + j];
            break;
        }
        case Op::Add: {
            std::vector<double>& ga = grads_[r.a];
            std::vector<double>& gb = grads_[r.b];
            for (std::size_t i = 0; i < go.size(); ++i) {
                ga[i] += go[i];
                gb[i] += go[i];
            }
            break;
        }
        case Op::Sub: {
            std::vector<double>& ga = grads_[r.a];
            std::vector<double>& gb = grads_[r.b];
            for (std::size_t i = 0; i < go.size(); ++i) {
                ga[i] += go[i];
                gb[i] -= go[i];
            }
            break;
        }
        case Op::Scale: {
            std::vector<double>& ga = grads_[r.a];
            for (std::size_t i = 0; i < go.size(); ++i) ga[i] += r.factor * go[i];
            break;
        }
        case Op::Relu: {
            std::vector<double>& ga = grads_[r.a];
            const double* px = r.saved0.raw();
            for (std::size_t i = 0; i < go.size(); ++i) {
                if (px[i] > 0.0) ga[i] += go[i]; // subgradient at 0 is 0
            }
            break;
        }
        case Op::Abs: {
            std::vector<double>& ga = grads_[r.a];
            const double* px = r.saved0.raw();
            for (std::size_t i = 0; i < go.size(); ++i) {
                if (px[i] > 0.0) ga[i] += go[i];
                else if (px[i] < 0.0) ga[i] -= go[i];
            }
            break;
        }
        case Op::RowSoftmax: {
            std::vector<double>& ga = grads_[r.a];
            const double* py = r.saved0.raw();
            const std::size_t n = out_shape.rows, d = out_shape.cols;
            for (std::size_t i = 0; i < n; ++i) {
                const double* yrow = py + i * d;
                const double* grow = go.data() + i * d;
                KahanSum dot;
                for (std::size_t j = 0; j < d; ++j) dot.add(grow[j] * yrow[j]);
                const double dv = dot.value();
                for (std::size_t j = 0; j < d; ++j) ga[i * d + j] += yrow[j] * (grow[j] - dv);
            }
            break;
        }
        case Op::AddRowVector: {
            std::vector<double>& gx = grads_[r.a];
            std::vector<double>& gb = grads_[r.b];
            const std::size_t n = out_shape.rows, d = out_shape.cols;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    gx[i * d + j] += go[i * d + j];
                    gb[j] += go[i * d + j];
                }
            break;
        }
        case Op::ConcatCols: {
            std::vector<double>& ga = grads_[r.a];
            std::vector<double>& gb = grads_[r.b];
            const std::size_t n = out_shape.rows, ca = std::size_t(r.factor);
            const std::size_t ctotal = out_shape.cols, cb = ctotal - ca;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < ca; ++j) ga[i * ca + j] += go[i * ctotal + j];
                for (std::size_t j = 0; j < cb; ++j) gb[i * cb + j] += go[i * ctotal + ca + j];
            }
            break;
        }
        case Op::ReduceRows: {
            std::vector<double>& ga = grads_[r.a];
            const Shape in_shape = shapes_[r.a];
            const std::size_t n = in_shape.rows, d = in_shape.cols;
            switch (r.agg) {
            case Agg::Sum:
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < d; ++j) ga[i * d + j] += go[j];
                break;
            case Agg::Mean: {
                if (n == 0) break;
                const double f = 1.0 / double(n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < d; ++j) ga[i * d + j] += go[j] * f;
                break;
            }
            case Agg::Max:
                for (std::size_t j = 0; j < d; ++j) {
                    if (r.indices[j] != std::uint32_t(-1)) ga[std::size_t(r.indices[j]) * d + j] += go[j];
                }
                break;
            }
            break;
        }
        case Op::BroadcastRows: {
            std::vector<double>& ga = grads_[r.a];
            const std::size_t n = out_shape.rows, d = out_shape.cols;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < d; ++j) ga[j] += go[i * d + j];
            break;
        }
        case Op::ReduceSum: {
            std::vector<double>& ga = grads_[r.a];
            for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += go[0];
            break;
        }
        case Op::NeighborAgg: {
            std::vector<double>& ga = grads_[r.a];
            const AdjList& adj = *r.adj;
            const std::size_t d = out_shape.cols;
            switch (r.agg) {
            case Agg::Sum:
                for (std::size_t v = 0; v < adj.size(); ++v) {
                    const double* grow = go.data() + v * d;
                    for (std::uint32_t u : adj[v])
                        for (std::size_t j = 0; j < d; ++j) ga[std::size_t(u) * d + j] += grow[j];
                }
                break;
            case Agg::Mean:
                for (std::size_t v = 0; v < adj.size(); ++v) {
                    if (adj[v].empty()) continue;
                    const double f = 1.0 / double(adj[v].size());
                    const double* grow = go.data() + v * d;
                    for (std::uint32_t u : adj[v])
                        for (std::size_t j = 0; j < d; ++j) ga[std::size_t(u) * d + j] += grow[j] * f;
                }
                break;
            case Agg::Max:
                for (std::size_t v = 0; v < adj.size(); ++v) {
                    const double* grow = go.data() + v * d;
                    for (std::size_t j = 0; j < d; ++j) {
                        const std::uint32_t u = r.indices[v * d + j];
                        if (u != std::uint32_t(-1)) ga[std::size_t(u) * d + j] += grow[j];
                    }
                }
                break;
            }
            break;
        }
        case Op::LayerNorm: {
            std::vector<double>& gx = grads_[r.a];
            std::vector<double>& gg = grads_[r.b];
            std::vector<double>& gb = grads_[r.c];
            const double* xhat = r.saved0.raw();
            const double* inv_std = r.saved1.raw();
            const double* gain = r.saved2.raw();
            const std::size_t n = out_shape.rows, d = out_shape.cols;
            for (std::size_t i = 0; i < n; ++i) {
                const double* grow = go.data() + i * d;
                const double* xrow = xhat + i * d;
                KahanSum sum_h, sum_hx;
                for (std::size_t j = 0; j < d; ++j) {
                    const double h = grow[j] * gain[j];
                    sum_h.add(h);
                    sum_hx.add(h * xrow[j]);
                    gg[j] += grow[j] * xrow[j];
                    gb[j] += grow[j];
                }
                const double mh = sum_h.value() / double(d);
                const double mhx = sum_hx.value() / double(d);
                const double is = inv_std[i];
                for (std::size_t j = 0; j < d; ++j) {
                    const double h = grow[j] * gain[j];
                    gx[i * d + j] += (h - mh - xrow[j] * mhx) * is;
                }
            }
            break;
        }
        }
    }
}

Tensor Tape::grad(const Tensor& t) const {
    if (!t.recorded() || t.tape() != this) {
        throw ContractError("grad: tensor is not recorded on this tape");
    }
    if (!has_grads_) throw ContractError("grad: backward() has not run");
    return Tensor(t.rows(), t.cols(), grads_[t.node()]);
}

} // namespace graphlab
