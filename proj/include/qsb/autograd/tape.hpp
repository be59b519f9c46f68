#pragma once

#include "qsb/autograd/adjoint.hpp"
#include "qsb/matrix.hpp"
#include "qsb/qsim/circuit.hpp"

#include <initializer_list>
#include <vector>

namespace qsb::autograd {

/// A batched numeric payload: `batch` samples of a rows x cols matrix,
/// stored sample-major. Shared parameters use batch == 1 and broadcast
/// against batched operands.
struct Value {
    int batch = 1;
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Value() = default;
    Value(int batch_, int rows_, int cols_, double fill = 0.0)
        : batch(batch_), rows(rows_), cols(cols_),
          data(static_cast<std::size_t>(batch_) * rows_ * cols_, fill) {}

    static Value scalar(double x) {
        Value v(1, 1, 1);
        v.data[0] = x;
        return v;
    }
    static Value column(std::vector<double> xs) {
        Value v;
        v.batch = 1;
        v.rows = static_cast<int>(xs.size());
        v.cols = 1;
        v.data = std::move(xs);
        return v;
    }

    std::size_t sample_size() const {
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }
    double* sample(int b) { return data.data() + static_cast<std::size_t>(b) * sample_size(); }
    const double* sample(int b) const {
        return data.data() + static_cast<std::size_t>(b) * sample_size();
    }
    double& at(int b, int r, int c) {
        return data[(static_cast<std::size_t>(b) * rows + r) * cols + c];
    }
    double at(int b, int r, int c) const {
        return data[(static_cast<std::size_t>(b) * rows + r) * cols + c];
    }
};

using NodeId = int;

/// Record of a mixed classical/quantum computation, differentiated in
/// reverse. Nodes are appended in execution order, so ids are already a
/// topological order; backward() walks them once, newest first.
class Tape {
  public:
    /// Non-trainable input (data, targets, fixed state).
    NodeId constant(Value v);
    /// Trainable leaf; backward() fills its gradient.
    NodeId param(Value v);

    // Classical ops. All record forward values and support reverse-mode
    // partials for every input. Binary elementwise ops broadcast a
    // batch-1 operand against a batched one; gradients of the broadcast
    // side sum over the batch.
    NodeId linear(NodeId w, NodeId b, NodeId x); // per sample: W x + b
    NodeId sigmoid(NodeId x);
    NodeId tanh(NodeId x);
    NodeId arctan(NodeId x);
    NodeId hadamard_product(NodeId a, NodeId b);
    NodeId add(NodeId a, NodeId b);
    NodeId outer_product(NodeId u, NodeId v); // column u (d), column v (q) -> d x q
    NodeId mse_loss(NodeId pred, NodeId target); // mean over batch and elements
    /// Stacks column vectors; batch-1 inputs broadcast across the batch.
    NodeId concat_rows(std::initializer_list<NodeId> parts);
    NodeId concat_rows(const std::vector<NodeId>& parts);
    /// Same data, new per-sample shape.
    NodeId reshape(NodeId x, int rows, int cols);

    /// Circuit expectations as a graph node: forward evaluates the whole
    /// batch in one vectorized pass; backward runs one adjoint sweep per
    /// sample and chains the K x P jacobian into the bound parameters.
    NodeId circuit_expval(const qsim::CircuitProgram& program, NodeId params);

    const Value& value(NodeId id) const { return nodes_[static_cast<std::size_t>(id)].val; }
    /// Valid after backward(); zero for nodes the loss does not reach.
    const Value& grad(NodeId id) const { return nodes_[static_cast<std::size_t>(id)].grad; }

    /// Reverse sweep from a scalar loss. Visits each node exactly once.
    void backward(NodeId loss);

    /// Flattens the gradients of the given leaves, in order.
    std::vector<double> gradient_vector(const std::vector<NodeId>& leaves) const;

    std::size_t node_count() const { return nodes_.size(); }

  private:
    enum class Op {
        Constant,
        Param,
        Linear,
        Sigmoid,
        Tanh,
        Arctan,
        Hadamard,
        Add,
        Outer,
        MseLoss,
        Concat,
        Reshape,
        Circuit,
    };

    struct Node {
        Op op;
        std::vector<NodeId> ins;
        Value val;
        Value grad;
        bool needed = false;                       // set during backward
        const qsim::CircuitProgram* program = nullptr; // Circuit nodes only
    };

    NodeId push(Node node);
    Node& at(NodeId id) { return nodes_[static_cast<std::size_t>(id)]; }
    const Node& at(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
    void check_id(NodeId id) const;
    void backward_node(Node& node);

    std::vector<Node> nodes_;
};

} // namespace qsb::autograd
