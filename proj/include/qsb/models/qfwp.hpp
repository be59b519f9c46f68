#pragma once

#include "qsb/models/qlstm.hpp"

namespace qsb::models {

/// Per-step circuit angles Theta (D=1 row, Q=3 columns), accumulated across
/// a sequence by outer-product updates. Not trainable.
struct FastWeights {
    std::array<double, kQfwpQubits> theta{};
};

/// Fast-weight programmer: a classical slow network emits per-step additive
/// updates to the circuit's rotation angles.
class Qfwp {
  public:
    Qfwp();

    const qsim::CircuitProgram& program() const { return program_; }

    /// One step: z = W_e s + b_e, alpha = W_l z + b_l, beta = W_q z + b_q,
    /// Theta += alpha beta^T; the circuit runs with encoding angles z and
    /// fast angles Theta, returning a = <Z_0>.
    std::pair<double, FastWeights> step(std::span<const double> s_t,
                                        const FastWeights& theta_prev,
                                        const ParamSet& params) const;

    /// Theta resets to zero at each window; prediction is W_p a_5 + b_p
    /// from the final step.
    double forward(std::span<const double> window, const ParamSet& params) const;

    std::vector<double> forward_batched(const Matrix& windows,
                                        const ParamSet& params) const;

    ModelGraph training_graph(autograd::Tape& tape, const Matrix& windows,
                              std::span<const double> targets,
                              const ParamSet& params) const;

  private:
    qsim::CircuitProgram program_;
};

} // namespace qsb::models
