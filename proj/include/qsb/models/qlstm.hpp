#pragma once

#include "qsb/autograd/tape.hpp"
#include "qsb/matrix.hpp"
#include "qsb/models/circuits.hpp"
#include "qsb/models/params.hpp"

#include <array>
#include <optional>

namespace qsb::models {

struct QlstmState {
    std::array<double, kHiddenSize> h{};
    std::array<double, kHiddenSize> c{};
};

/// The classical cell update given the four gate-circuit outputs:
/// f = sigma(e_f), i = sigma(e_i), c~ = tanh(e_c), o = sigma(e_o),
/// c_t = f . c_{t-1} + i . c~, h_t = o . tanh(c_t).
QlstmState qlstm_combine(std::span<const double> e_forget,
                         std::span<const double> e_input,
                         std::span<const double> e_cell,
                         std::span<const double> e_output, const QlstmState& prev);

/// Handles into a recorded training graph: the scalar loss, the per-sample
/// predictions, and the trainable leaves in canonical parameter order.
struct ModelGraph {
    autograd::NodeId loss;
    autograd::NodeId predictions;
    std::vector<autograd::NodeId> leaves;
};

/// LSTM whose four gates are variational circuits over [x_t; h_{t-1}].
class Qlstm {
  public:
    explicit Qlstm(ModelConfig cfg = {});

    const qsim::CircuitProgram& program() const { return program_; }
    const ModelConfig& config() const { return cfg_; }

    QlstmState cell(std::span<const double> x_t, const QlstmState& prev,
                    const ParamSet& params) const;

    /// Unrolls the 5-step window and returns W_out h_5 + b_out. When
    /// h_trace is given, it receives the 5 x 3 hidden states (for the
    /// batched/serial equivalence check).
    double forward(std::span<const double> window, const ParamSet& params,
                   Matrix* h_trace = nullptr) const;

    /// Vectorized forward over a B x 20 window matrix; one pass over each
    /// gate list with batch-wide amplitude updates. h_trace, when given,
    /// receives a B x 15 matrix (5 steps x 3 hidden components).
    std::vector<double> forward_batched(const Matrix& windows, const ParamSet& params,
                                        Matrix* h_trace = nullptr) const;

    /// Records the batched forward pass (loss included) on a tape.
    ModelGraph training_graph(autograd::Tape& tape, const Matrix& windows,
                              std::span<const double> targets,
                              const ParamSet& params) const;

  private:
    double encode(double v) const;

    ModelConfig cfg_;
    qsim::CircuitProgram program_;
};

} // namespace qsb::models
