#include "qsb/models/qlstm.hpp"

#include <cmath>

namespace qsb::models {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

constexpr std::array<const char*, 4> kGateNames = {"vqc_theta_forget", "vqc_theta_input",
                                                   "vqc_theta_cell", "vqc_theta_output"};

void check_window(std::span<const double> window) {
    if (window.size() != static_cast<std::size_t>(kWindowSize)) {
        throw DataError("window must hold 5x4 values");
    }
    for (double v : window) {
        if (!std::isfinite(v)) {
            throw DataError("window contains a non-finite value");
        }
    }
}

} // namespace

QlstmState qlstm_combine(std::span<const double> e_forget,
                         std::span<const double> e_input,
                         std::span<const double> e_cell,
                         std::span<const double> e_output, const QlstmState& prev) {
    QlstmState next;
    for (int j = 0; j < kHiddenSize; ++j) {
        const double f = sigmoid(e_forget[static_cast<std::size_t>(j)]);
        const double i = sigmoid(e_input[static_cast<std::size_t>(j)]);
        const double ct = std::tanh(e_cell[static_cast<std::size_t>(j)]);
        const double o = sigmoid(e_output[static_cast<std::size_t>(j)]);
        next.c[static_cast<std::size_t>(j)] =
            f * prev.c[static_cast<std::size_t>(j)] + i * ct;
        next.h[static_cast<std::size_t>(j)] =
            o * std::tanh(next.c[static_cast<std::size_t>(j)]);
    }
    return next;
}

Qlstm::Qlstm(ModelConfig cfg) : cfg_(cfg), program_(qlstm_gate_circuit(cfg)) {}

double Qlstm::encode(double v) const {
    return cfg_.encoding == AngleEncoding::Raw ? v : std::atan(v);
}

QlstmState Qlstm::cell(std::span<const double> x_t, const QlstmState& prev,
                       const ParamSet& params) const {
    std::array<double, 2 * kQlstmQubits> bindings{};
    for (int j = 0; j < kInputDim; ++j) {
        if (!std::isfinite(x_t[static_cast<std::size_t>(j)])) {
            throw DataError("cell input contains a non-finite value");
        }
        bindings[static_cast<std::size_t>(j)] = encode(x_t[static_cast<std::size_t>(j)]);
    }
    for (int j = 0; j < kHiddenSize; ++j) {
        bindings[static_cast<std::size_t>(kInputDim + j)] =
            encode(prev.h[static_cast<std::size_t>(j)]);
    }
    std::array<std::vector<double>, 4> gate_outputs;
    for (std::size_t gidx = 0; gidx < kGateNames.size(); ++gidx) {
        const auto& thetas = params.find(kGateNames[gidx]).values;
        for (int j = 0; j < kQlstmQubits; ++j) {
            bindings[static_cast<std::size_t>(kQlstmQubits + j)] =
                thetas[static_cast<std::size_t>(j)];
        }
        gate_outputs[gidx] = qsim::run_circuit(program_, bindings);
    }
    return qlstm_combine(gate_outputs[0], gate_outputs[1], gate_outputs[2],
                         gate_outputs[3], prev);
}

double Qlstm::forward(std::span<const double> window, const ParamSet& params,
                      Matrix* h_trace) const {
    check_window(window);
    if (h_trace) {
        *h_trace = Matrix(static_cast<std::size_t>(kSeqLen),
                          static_cast<std::size_t>(kHiddenSize));
    }
    QlstmState state;
    for (int t = 0; t < kSeqLen; ++t) {
        state = cell(window.subspan(static_cast<std::size_t>(t * kInputDim),
                                    static_cast<std::size_t>(kInputDim)),
                     state, params);
        if (h_trace) {
            for (int j = 0; j < kHiddenSize; ++j) {
                (*h_trace)(static_cast<std::size_t>(t), static_cast<std::size_t>(j)) =
                    state.h[static_cast<std::size_t>(j)];
            }
        }
    }
    const auto& w_out = params.find("w_out").values;
    double y = params.find("b_out").values[0];
    for (int j = 0; j < kHiddenSize; ++j) {
        y += w_out[static_cast<std::size_t>(j)] * state.h[static_cast<std::size_t>(j)];
    }
    return y;
}

std::vector<double> Qlstm::forward_batched(const Matrix& windows,
                                           const ParamSet& params,
                                           Matrix* h_trace) const {
    const std::size_t batch = windows.rows();
    if (windows.cols() != static_cast<std::size_t>(kWindowSize)) {
        throw DataError("window matrix must have 20 columns");
    }
    if (h_trace) {
        *h_trace = Matrix(batch, static_cast<std::size_t>(kSeqLen * kHiddenSize));
    }
    Matrix h(batch, static_cast<std::size_t>(kHiddenSize));
    Matrix c(batch, static_cast<std::size_t>(kHiddenSize));
    Matrix bindings(batch, static_cast<std::size_t>(2 * kQlstmQubits));
    std::array<Matrix, 4> gate_outputs;
    for (std::size_t t = 0; t < static_cast<std::size_t>(kSeqLen); ++t) {
        for (std::size_t b = 0; b < batch; ++b) {
            for (std::size_t j = 0; j < static_cast<std::size_t>(kInputDim); ++j) {
                bindings(b, j) =
                    encode(windows(b, t * static_cast<std::size_t>(kInputDim) + j));
            }
            for (std::size_t j = 0; j < static_cast<std::size_t>(kHiddenSize); ++j) {
                bindings(b, static_cast<std::size_t>(kInputDim) + j) = encode(h(b, j));
            }
        }
        for (std::size_t gidx = 0; gidx < kGateNames.size(); ++gidx) {
            const auto& thetas = params.find(kGateNames[gidx]).values;
            for (std::size_t b = 0; b < batch; ++b) {
                for (std::size_t j = 0; j < static_cast<std::size_t>(kQlstmQubits); ++j) {
                    bindings(b, static_cast<std::size_t>(kQlstmQubits) + j) = thetas[j];
                }
            }
            gate_outputs[gidx] = qsim::run_circuit_batched(program_, bindings);
        }
        for (std::size_t b = 0; b < batch; ++b) {
            QlstmState prev;
            for (std::size_t j = 0; j < static_cast<std::size_t>(kHiddenSize); ++j) {
                prev.h[j] = h(b, j);
                prev.c[j] = c(b, j);
            }
            const QlstmState next =
                qlstm_combine(gate_outputs[0].row(b), gate_outputs[1].row(b),
                              gate_outputs[2].row(b), gate_outputs[3].row(b), prev);
            for (std::size_t j = 0; j < static_cast<std::size_t>(kHiddenSize); ++j) {
                h(b, j) = next.h[j];
                c(b, j) = next.c[j];
                if (h_trace) {
                    (*h_trace)(b, t * static_cast<std::size_t>(kHiddenSize) + j) =
                        next.h[j];
                }
            }
        }
    }
    const auto& w_out = params.find("w_out").values;
    const double b_out = params.find("b_out").values[0];
    std::vector<double> predictions(batch);
    for (std::size_t b = 0; b < batch; ++b) {
        double y = b_out;
        for (std::size_t j = 0; j < static_cast<std::size_t>(kHiddenSize); ++j) {
            y += w_out[j] * h(b, j);
        }
        predictions[b] = y;
    }
    return predictions;
}

ModelGraph Qlstm::training_graph(autograd::Tape& tape, const Matrix& windows,
                                 std::span<const double> targets,
                                 const ParamSet& params) const {
    using autograd::NodeId;
    using autograd::Value;
    const int batch = static_cast<int>(windows.rows());
    if (targets.size() != windows.rows()) {
        throw DataError("one target per window required");
    }

    std::array<NodeId, 4> thetas;
    for (std::size_t gidx = 0; gidx < kGateNames.size(); ++gidx) {
        thetas[gidx] = tape.param(Value::column(params.find(kGateNames[gidx]).values));
    }
    Value w_out_v(1, 1, kHiddenSize);
    w_out_v.data = params.find("w_out").values;
    const NodeId w_out = tape.param(std::move(w_out_v));
    const NodeId b_out = tape.param(Value::scalar(params.find("b_out").values[0]));

    NodeId h = tape.constant(Value(1, kHiddenSize, 1));
    NodeId c = tape.constant(Value(1, kHiddenSize, 1));
    for (int t = 0; t < kSeqLen; ++t) {
        Value x_v(batch, kInputDim, 1);
        for (int b = 0; b < batch; ++b) {
            for (int j = 0; j < kInputDim; ++j) {
                x_v.at(b, j, 0) = windows(static_cast<std::size_t>(b),
                                          static_cast<std::size_t>(t * kInputDim + j));
            }
        }
        NodeId x = tape.constant(std::move(x_v));
        if (cfg_.encoding == AngleEncoding::Arctan) {
            x = tape.arctan(x);
        }
        const NodeId h_enc =
            cfg_.encoding == AngleEncoding::Arctan ? tape.arctan(h) : h;
        const NodeId v = tape.concat_rows({x, h_enc});

        std::array<NodeId, 4> gate_exp;
        for (std::size_t gidx = 0; gidx < 4; ++gidx) {
            const NodeId bindings = tape.concat_rows({v, thetas[gidx]});
            gate_exp[gidx] = tape.circuit_expval(program_, bindings);
        }
        const NodeId f = tape.sigmoid(gate_exp[0]);
        const NodeId i = tape.sigmoid(gate_exp[1]);
        const NodeId ct = tape.tanh(gate_exp[2]);
        const NodeId o = tape.sigmoid(gate_exp[3]);
        c = tape.add(tape.hadamard_product(f, c), tape.hadamard_product(i, ct));
        h = tape.hadamard_product(o, tape.tanh(c));
    }
    const NodeId pred = tape.linear(w_out, b_out, h);
    Value target_v(batch, 1, 1);
    std::copy(targets.begin(), targets.end(), target_v.data.begin());
    const NodeId loss = tape.mse_loss(pred, tape.constant(std::move(target_v)));

    ModelGraph graph;
    graph.loss = loss;
    graph.predictions = pred;
    graph.leaves = {thetas[0], thetas[1], thetas[2], thetas[3], w_out, b_out};
    return graph;
}

} // namespace qsb::models
