#include "qsb/autograd/tape.hpp"

#include <cmath>
#include <string>

namespace qsb::autograd {

namespace {

void require(bool ok, const char* what) {
    if (!ok) {
        throw ConfigError(what);
    }
}

int broadcast_batch(int a, int b, const char* what) {
    if (a == b) {
        return a;
    }
    if (a == 1) {
        return b;
    }
    if (b == 1) {
        return a;
    }
    throw ConfigError(std::string(what) + ": incompatible batch sizes " +
                      std::to_string(a) + " vs " + std::to_string(b));
}

} // namespace

void Tape::check_id(NodeId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
        throw IndexError("tape node id out of range");
    }
}

NodeId Tape::push(Node node) {
    nodes_.push_back(std::move(node));
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Tape::constant(Value v) { return push({Op::Constant, {}, std::move(v), {}}); }

NodeId Tape::param(Value v) { return push({Op::Param, {}, std::move(v), {}}); }

NodeId Tape::linear(NodeId w, NodeId b, NodeId x) {
    check_id(w);
    check_id(b);
    check_id(x);
    const Value& wv = at(w).val;
    const Value& bv = at(b).val;
    const Value& xv = at(x).val;
    require(wv.batch == 1 && bv.batch == 1, "linear: weights must be unbatched");
    require(wv.cols == xv.rows && xv.cols == 1, "linear: W cols must match x rows");
    require(bv.rows == wv.rows && bv.cols == 1, "linear: bias must match W rows");
    Value out(xv.batch, wv.rows, 1);
    for (int bb = 0; bb < xv.batch; ++bb) {
        for (int r = 0; r < wv.rows; ++r) {
            double acc = bv.at(0, r, 0);
            for (int c = 0; c < wv.cols; ++c) {
                acc += wv.at(0, r, c) * xv.at(bb, c, 0);
            }
            out.at(bb, r, 0) = acc;
        }
    }
    return push({Op::Linear, {w, b, x}, std::move(out), {}});
}

NodeId Tape::sigmoid(NodeId x) {
    check_id(x);
    const Value& xv = at(x).val;
    Value out(xv.batch, xv.rows, xv.cols);
    for (std::size_t i = 0; i < xv.data.size(); ++i) {
        out.data[i] = 1.0 / (1.0 + std::exp(-xv.data[i]));
    }
    return push({Op::Sigmoid, {x}, std::move(out), {}});
}

NodeId Tape::tanh(NodeId x) {
    check_id(x);
    const Value& xv = at(x).val;
    Value out(xv.batch, xv.rows, xv.cols);
    for (std::size_t i = 0; i < xv.data.size(); ++i) {
        out.data[i] = std::tanh(xv.data[i]);
    }
    return push({Op::Tanh, {x}, std::move(out), {}});
}

NodeId Tape::arctan(NodeId x) {
    check_id(x);
    const Value& xv = at(x).val;
    Value out(xv.batch, xv.rows, xv.cols);
    for (std::size_t i = 0; i < xv.data.size(); ++i) {
        out.data[i] = std::atan(xv.data[i]);
    }
    return push({Op::Arctan, {x}, std::move(out), {}});
}

NodeId Tape::hadamard_product(NodeId a, NodeId b) {
    check_id(a);
    check_id(b);
    const Value& av = at(a).val;
    const Value& bv = at(b).val;
    require(av.rows == bv.rows && av.cols == bv.cols,
            "hadamard_product: operand shapes must match");
    const int batch = broadcast_batch(av.batch, bv.batch, "hadamard_product");
    Value out(batch, av.rows, av.cols);
    const std::size_t n = out.sample_size();
    for (int bb = 0; bb < batch; ++bb) {
        const double* pa = av.sample(av.batch == 1 ? 0 : bb);
        const double* pb = bv.sample(bv.batch == 1 ? 0 : bb);
        double* po = out.sample(bb);
        for (std::size_t i = 0; i < n; ++i) {
            po[i] = pa[i] * pb[i];
        }
    }
    return push({Op::Hadamard, {a, b}, std::move(out), {}});
}

NodeId Tape::add(NodeId a, NodeId b) {
    check_id(a);
    check_id(b);
    const Value& av = at(a).val;
    const Value& bv = at(b).val;
    require(av.rows == bv.rows && av.cols == bv.cols, "add: operand shapes must match");
    const int batch = broadcast_batch(av.batch, bv.batch, "add");
    Value out(batch, av.rows, av.cols);
    const std::size_t n = out.sample_size();
    for (int bb = 0; bb < batch; ++bb) {
        const double* pa = av.sample(av.batch == 1 ? 0 : bb);
        const double* pb = bv.sample(bv.batch == 1 ? 0 : bb);
        double* po = out.sample(bb);
        for (std::size_t i = 0; i < n; ++i) {
            po[i] = pa[i] + pb[i];
        }
    }
    return push({Op::Add, {a, b}, std::move(out), {}});
}

NodeId Tape::outer_product(NodeId u, NodeId v) {
    check_id(u);
    check_id(v);
    const Value& uv = at(u).val;
    const Value& vv = at(v).val;
    require(uv.cols == 1 && vv.cols == 1, "outer_product: operands must be columns");
    const int batch = broadcast_batch(uv.batch, vv.batch, "outer_product");
    Value out(batch, uv.rows, vv.rows);
    for (int bb = 0; bb < batch; ++bb) {
        const double* pu = uv.sample(uv.batch == 1 ? 0 : bb);
        const double* pv = vv.sample(vv.batch == 1 ? 0 : bb);
        for (int i = 0; i < uv.rows; ++i) {
            for (int j = 0; j < vv.rows; ++j) {
                out.at(bb, i, j) = pu[i] * pv[j];
            }
        }
    }
    return push({Op::Outer, {u, v}, std::move(out), {}});
}

NodeId Tape::mse_loss(NodeId pred, NodeId target) {
    check_id(pred);
    check_id(target);
    const Value& pv = at(pred).val;
    const Value& tv = at(target).val;
    require(pv.batch == tv.batch && pv.rows == tv.rows && pv.cols == tv.cols,
            "mse_loss: prediction and target shapes must match");
    double acc = 0.0;
    for (std::size_t i = 0; i < pv.data.size(); ++i) {
        const double d = pv.data[i] - tv.data[i];
        acc += d * d;
    }
    Value out = Value::scalar(acc / static_cast<double>(pv.data.size()));
    return push({Op::MseLoss, {pred, target}, std::move(out), {}});
}

NodeId Tape::concat_rows(std::initializer_list<NodeId> parts) {
    return concat_rows(std::vector<NodeId>(parts));
}

NodeId Tape::concat_rows(const std::vector<NodeId>& parts) {
    require(!parts.empty(), "concat_rows: needs at least one input");
    int batch = 1;
    int rows = 0;
    for (NodeId id : parts) {
        check_id(id);
        const Value& v = at(id).val;
        require(v.cols == 1, "concat_rows: inputs must be column vectors");
        batch = broadcast_batch(batch, v.batch, "concat_rows");
        rows += v.rows;
    }
    Value out(batch, rows, 1);
    for (int bb = 0; bb < batch; ++bb) {
        double* po = out.sample(bb);
        std::size_t off = 0;
        for (NodeId id : parts) {
            const Value& v = at(id).val;
            const double* pv = v.sample(v.batch == 1 ? 0 : bb);
            for (int r = 0; r < v.rows; ++r) {
                po[off + static_cast<std::size_t>(r)] = pv[r];
            }
            off += static_cast<std::size_t>(v.rows);
        }
    }
    return push({Op::Concat, parts, std::move(out), {}});
}

NodeId Tape::reshape(NodeId x, int rows, int cols) {
    check_id(x);
    const Value& xv = at(x).val;
    require(rows * cols == xv.rows * xv.cols, "reshape: element count must be preserved");
    Value out = xv;
    out.rows = rows;
    out.cols = cols;
    return push({Op::Reshape, {x}, std::move(out), {}});
}

NodeId Tape::circuit_expval(const qsim::CircuitProgram& program, NodeId params) {
    check_id(params);
    const Value& pv = at(params).val;
    require(pv.cols == 1, "circuit_expval: parameter binding must be a column");
    require(pv.rows == program.param_count(),
            "circuit_expval: binding length must equal the program's slot count");
    const int batch = pv.batch;
    const int num_obs = static_cast<int>(program.observables.size());
    Value out(batch, num_obs, 1);
    if (batch == 1) {
        const auto exp = qsim::run_circuit(program, {pv.data.data(), pv.data.size()});
        std::copy(exp.begin(), exp.end(), out.data.begin());
    } else {
        // Sample-major (B, P, 1) data is already a row-major B x P matrix.
        Matrix bindings(static_cast<std::size_t>(batch),
                        static_cast<std::size_t>(pv.rows), pv.data);
        Matrix exp = qsim::run_circuit_batched(program, bindings);
        out.data = std::move(exp.data());
    }
    Node node{Op::Circuit, {params}, std::move(out), {}};
    node.program = &program;
    return push(std::move(node));
}

void Tape::backward(NodeId loss) {
    check_id(loss);
    Node& loss_node = at(loss);
    if (loss_node.val.batch != 1 || loss_node.val.rows != 1 || loss_node.val.cols != 1) {
        throw ConfigError("backward: loss must be a scalar");
    }

    // Reset, then mark the subgraph the loss depends on. Trainable leaves
    // always get a (possibly zero) gradient so callers can read them even
    // when the loss does not touch them.
    for (Node& n : nodes_) {
        n.needed = n.op == Op::Param;
        n.grad = Value();
    }
    loss_node.needed = true;
    for (NodeId id = loss; id >= 0; --id) {
        Node& n = at(id);
        if (!n.needed) {
            continue;
        }
        for (NodeId in : n.ins) {
            Node& src = at(in);
            if (src.op != Op::Constant) {
                src.needed = true;
            }
        }
    }
    for (Node& n : nodes_) {
        if (n.needed) {
            n.grad = Value(n.val.batch, n.val.rows, n.val.cols, 0.0);
        }
    }

    at(loss).grad.data[0] = 1.0;
    for (NodeId id = loss; id >= 0; --id) {
        Node& n = at(id);
        if (n.needed) {
            backward_node(n);
        }
    }
}

void Tape::backward_node(Node& node) {
    const Value& g = node.grad;
    switch (node.op) {
    case Op::Constant:
    case Op::Param:
        return;
    case Op::Linear: {
        Node& wn = at(node.ins[0]);
        Node& bn = at(node.ins[1]);
        Node& xn = at(node.ins[2]);
        const Value& wv = wn.val;
        const Value& xv = xn.val;
        for (int bb = 0; bb < g.batch; ++bb) {
            for (int r = 0; r < wv.rows; ++r) {
                const double gr = g.at(bb, r, 0);
                if (bn.needed) {
                    bn.grad.at(0, r, 0) += gr;
                }
                for (int c = 0; c < wv.cols; ++c) {
                    if (wn.needed) {
                        wn.grad.at(0, r, c) += gr * xv.at(bb, c, 0);
                    }
                    if (xn.needed) {
                        xn.grad.at(bb, c, 0) += wv.at(0, r, c) * gr;
                    }
                }
            }
        }
        return;
    }
    case Op::Sigmoid: {
        Node& xn = at(node.ins[0]);
        if (!xn.needed) {
            return;
        }
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            const double y = node.val.data[i];
            xn.grad.data[i] += g.data[i] * y * (1.0 - y);
        }
        return;
    }
    case Op::Tanh: {
        Node& xn = at(node.ins[0]);
        if (!xn.needed) {
            return;
        }
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            const double y = node.val.data[i];
            xn.grad.data[i] += g.data[i] * (1.0 - y * y);
        }
        return;
    }
    case Op::Arctan: {
        Node& xn = at(node.ins[0]);
        if (!xn.needed) {
            return;
        }
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            const double x = xn.val.data[i];
            xn.grad.data[i] += g.data[i] / (1.0 + x * x);
        }
        return;
    }
    case Op::Hadamard: {
        Node& an = at(node.ins[0]);
        Node& bn = at(node.ins[1]);
        const std::size_t n = node.val.sample_size();
        for (int bb = 0; bb < g.batch; ++bb) {
            const double* pg = g.sample(bb);
            const double* pa = an.val.sample(an.val.batch == 1 ? 0 : bb);
            const double* pb = bn.val.sample(bn.val.batch == 1 ? 0 : bb);
            if (an.needed) {
                double* da = an.grad.sample(an.val.batch == 1 ? 0 : bb);
                for (std::size_t i = 0; i < n; ++i) {
                    da[i] += pg[i] * pb[i];
                }
            }
            if (bn.needed) {
                double* db = bn.grad.sample(bn.val.batch == 1 ? 0 : bb);
                for (std::size_t i = 0; i < n; ++i) {
                    db[i] += pg[i] * pa[i];
                }
            }
        }
        return;
    }
    case Op::Add: {
        for (int side = 0; side < 2; ++side) {
            Node& sn = at(node.ins[static_cast<std::size_t>(side)]);
            if (!sn.needed) {
                continue;
            }
            const std::size_t n = node.val.sample_size();
            for (int bb = 0; bb < g.batch; ++bb) {
                const double* pg = g.sample(bb);
                double* ds = sn.grad.sample(sn.val.batch == 1 ? 0 : bb);
                for (std::size_t i = 0; i < n; ++i) {
                    ds[i] += pg[i];
                }
            }
        }
        return;
    }
    case Op::Outer: {
        Node& un = at(node.ins[0]);
        Node& vn = at(node.ins[1]);
        for (int bb = 0; bb < g.batch; ++bb) {
            const int su = un.val.batch == 1 ? 0 : bb;
            const int sv = vn.val.batch == 1 ? 0 : bb;
            for (int i = 0; i < un.val.rows; ++i) {
                for (int j = 0; j < vn.val.rows; ++j) {
                    const double gij = g.at(bb, i, j);
                    if (un.needed) {
                        un.grad.at(su, i, 0) += gij * vn.val.at(sv, j, 0);
                    }
                    if (vn.needed) {
                        vn.grad.at(sv, j, 0) += gij * un.val.at(su, i, 0);
                    }
                }
            }
        }
        return;
    }
    case Op::MseLoss: {
        Node& pn = at(node.ins[0]);
        Node& tn = at(node.ins[1]);
        const double scale =
            2.0 * g.data[0] / static_cast<double>(pn.val.data.size());
        for (std::size_t i = 0; i < pn.val.data.size(); ++i) {
            const double d = pn.val.data[i] - tn.val.data[i];
            if (pn.needed) {
                pn.grad.data[i] += scale * d;
            }
            if (tn.needed) {
                tn.grad.data[i] -= scale * d;
            }
        }
        return;
    }
    case Op::Concat: {
        for (int bb = 0; bb < g.batch; ++bb) {
            const double* pg = g.sample(bb);
            std::size_t off = 0;
            for (NodeId in : node.ins) {
                Node& sn = at(in);
                const std::size_t rows = static_cast<std::size_t>(sn.val.rows);
                if (sn.needed) {
                    double* ds = sn.grad.sample(sn.val.batch == 1 ? 0 : bb);
                    for (std::size_t r = 0; r < rows; ++r) {
                        ds[r] += pg[off + r];
                    }
                }
                off += rows;
            }
        }
        return;
    }
    case Op::Reshape: {
        Node& xn = at(node.ins[0]);
        if (!xn.needed) {
            return;
        }
        for (std::size_t i = 0; i < g.data.size(); ++i) {
            xn.grad.data[i] += g.data[i];
        }
        return;
    }
    case Op::Circuit: {
        Node& pn = at(node.ins[0]);
        if (!pn.needed) {
            return;
        }
        const int num_params = pn.val.rows;
        const int num_obs = node.val.rows;
        // One adjoint sweep per sample; the batch dimension is looped here.
        for (int bb = 0; bb < g.batch; ++bb) {
            const AdjointResult res = adjoint_expval_grad(
                *node.program,
                {pn.val.sample(bb), static_cast<std::size_t>(num_params)});
            for (int p = 0; p < num_params; ++p) {
                double acc = 0.0;
                for (int k = 0; k < num_obs; ++k) {
                    acc += g.at(bb, k, 0) *
                           res.jacobian(static_cast<std::size_t>(k),
                                        static_cast<std::size_t>(p));
                }
                pn.grad.at(bb, p, 0) += acc;
            }
        }
        return;
    }
    }
}

std::vector<double> Tape::gradient_vector(const std::vector<NodeId>& leaves) const {
    std::vector<double> out;
    for (NodeId id : leaves) {
        check_id(id);
        const Node& n = at(id);
        if (n.grad.data.empty()) {
            out.insert(out.end(), n.val.data.size(), 0.0);
        } else {
            out.insert(out.end(), n.grad.data.begin(), n.grad.data.end());
        }
    }
    return out;
}

} // namespace qsb::autograd
