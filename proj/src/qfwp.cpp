#include "qsb/models/qfwp.hpp"

#include <cmath>

namespace qsb::models {

namespace {

struct SlowOutputs {
    std::array<double, kQfwpLatent> z;
    double alpha;
    std::array<double, kQfwpQubits> beta;
};

SlowOutputs slow_program(std::span<const double> s_t, const ParamSet& params) {
    for (double v : s_t) {
        if (!std::isfinite(v)) {
            throw DataError("step input contains a non-finite value");
        }
    }
    const auto& w_e = params.find("w_encoder").values;   // 3 x 4 row-major
    const auto& b_e = params.find("b_encoder").values;
    const auto& w_l = params.find("w_layer_sel").values; // 1 x 3
    const auto& b_l = params.find("b_layer_sel").values;
    const auto& w_q = params.find("w_qubit_sel").values; // 3 x 3
    const auto& b_q = params.find("b_qubit_sel").values;

    SlowOutputs out{};
    for (std::size_t r = 0; r < kQfwpLatent; ++r) {
        double acc = b_e[r];
        for (std::size_t c = 0; c < kInputDim; ++c) {
            acc += w_e[r * kInputDim + c] * s_t[c];
        }
        out.z[r] = acc;
    }
    out.alpha = b_l[0];
    for (std::size_t c = 0; c < kQfwpLatent; ++c) {
        out.alpha += w_l[c] * out.z[c];
    }
    for (std::size_t r = 0; r < kQfwpQubits; ++r) {
        double acc = b_q[r];
        for (std::size_t c = 0; c < kQfwpLatent; ++c) {
            acc += w_q[r * kQfwpLatent + c] * out.z[c];
        }
        out.beta[r] = acc;
    }
    return out;
}

} // namespace

Qfwp::Qfwp() : program_(qfwp_circuit()) {}

std::pair<double, FastWeights> Qfwp::step(std::span<const double> s_t,
                                          const FastWeights& theta_prev,
                                          const ParamSet& params) const {
    if (s_t.size() != static_cast<std::size_t>(kInputDim)) {
        throw DataError("step input must hold 4 values");
    }
    const SlowOutputs slow = slow_program(s_t, params);
    FastWeights theta = theta_prev;
    for (std::size_t q = 0; q < kQfwpQubits; ++q) {
        theta.theta[q] += slow.alpha * slow.beta[q];
    }
    std::array<double, 2 * kQfwpQubits> bindings{};
    for (std::size_t q = 0; q < kQfwpLatent; ++q) {
        bindings[q] = slow.z[q];
    }
    for (std::size_t q = 0; q < kQfwpQubits; ++q) {
        bindings[kQfwpQubits + q] = theta.theta[q];
    }
    const auto expectations = qsim::run_circuit(program_, bindings);
    return {expectations[0], theta};
}

double Qfwp::forward(std::span<const double> window, const ParamSet& params) const {
    if (window.size() != static_cast<std::size_t>(kWindowSize)) {
        throw DataError("window must hold 5x4 values");
    }
    FastWeights theta;
    double a_t = 0.0;
    for (int t = 0; t < kSeqLen; ++t) {
        auto [a, next] = step(window.subspan(static_cast<std::size_t>(t * kInputDim),
                                             static_cast<std::size_t>(kInputDim)),
                              theta, params);
        a_t = a;
        theta = next;
    }
    return params.find("w_post").values[0] * a_t + params.find("b_post").values[0];
}

std::vector<double> Qfwp::forward_batched(const Matrix& windows,
                                          const ParamSet& params) const {
    const std::size_t batch = windows.rows();
    if (windows.cols() != static_cast<std::size_t>(kWindowSize)) {
        throw DataError("window matrix must have 20 columns");
    }
    Matrix theta(batch, static_cast<std::size_t>(kQfwpQubits));
    Matrix bindings(batch, static_cast<std::size_t>(2 * kQfwpQubits));
    std::vector<double> a_final(batch, 0.0);
    for (std::size_t t = 0; t < static_cast<std::size_t>(kSeqLen); ++t) {
        for (std::size_t b = 0; b < batch; ++b) {
            const SlowOutputs slow = slow_program(
                windows.row(b).subspan(t * static_cast<std::size_t>(kInputDim),
                                       static_cast<std::size_t>(kInputDim)),
                params);
            for (std::size_t q = 0; q < kQfwpQubits; ++q) {
                theta(b, q) += slow.alpha * slow.beta[q];
                bindings(b, q) = slow.z[q];
                bindings(b, static_cast<std::size_t>(kQfwpQubits) + q) = theta(b, q);
            }
        }
        const Matrix expectations = qsim::run_circuit_batched(program_, bindings);
        for (std::size_t b = 0; b < batch; ++b) {
            a_final[b] = expectations(b, 0);
        }
    }
    const double w_p = params.find("w_post").values[0];
    const double b_p = params.find("b_post").values[0];
    for (auto& a : a_final) {
        a = w_p * a + b_p;
    }
    return a_final;
}

ModelGraph Qfwp::training_graph(autograd::Tape& tape, const Matrix& windows,
                                std::span<const double> targets,
                                const ParamSet& params) const {
    using autograd::NodeId;
    using autograd::Value;
    const int batch = static_cast<int>(windows.rows());
    if (targets.size() != windows.rows()) {
        throw DataError("one target per window required");
    }

    auto mat_param = [&](const char* name, int rows, int cols) {
        Value v(1, rows, cols);
        v.data = params.find(name).values;
        return tape.param(std::move(v));
    };
    const NodeId w_e = mat_param("w_encoder", kQfwpLatent, kInputDim);
    const NodeId b_e = mat_param("b_encoder", kQfwpLatent, 1);
    const NodeId w_l = mat_param("w_layer_sel", 1, kQfwpLatent);
    const NodeId b_l = mat_param("b_layer_sel", 1, 1);
    const NodeId w_q = mat_param("w_qubit_sel", kQfwpQubits, kQfwpLatent);
    const NodeId b_q = mat_param("b_qubit_sel", kQfwpQubits, 1);
    const NodeId w_p = mat_param("w_post", 1, 1);
    const NodeId b_p = mat_param("b_post", 1, 1);

    NodeId theta = tape.constant(Value(1, 1, kQfwpQubits));
    NodeId a_t = -1;
    for (int t = 0; t < kSeqLen; ++t) {
        Value s_v(batch, kInputDim, 1);
        for (int b = 0; b < batch; ++b) {
            for (int j = 0; j < kInputDim; ++j) {
                s_v.at(b, j, 0) = windows(static_cast<std::size_t>(b),
                                          static_cast<std::size_t>(t * kInputDim + j));
            }
        }
        const NodeId s = tape.constant(std::move(s_v));
        const NodeId z = tape.linear(w_e, b_e, s);
        const NodeId alpha = tape.linear(w_l, b_l, z);
        const NodeId beta = tape.linear(w_q, b_q, z);
        theta = tape.add(theta, tape.outer_product(alpha, beta));
        const NodeId bindings =
            tape.concat_rows({z, tape.reshape(theta, kQfwpQubits, 1)});
        a_t = tape.circuit_expval(program_, bindings);
    }
    const NodeId pred = tape.linear(w_p, b_p, a_t);
    Value target_v(batch, 1, 1);
    std::copy(targets.begin(), targets.end(), target_v.data.begin());
    const NodeId loss = tape.mse_loss(pred, tape.constant(std::move(target_v)));

    ModelGraph graph;
    graph.loss = loss;
    graph.predictions = pred;
    graph.leaves = {w_e, b_e, w_l, b_l, w_q, b_q, w_p, b_p};
    return graph;
}

} // namespace qsb::models
