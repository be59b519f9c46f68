#pragma once

#include "qsb/qsim/circuit.hpp"

namespace qsb::models {

inline constexpr int kInputDim = 4;   // OHLC features per day
inline constexpr int kHiddenSize = 3; // H
inline constexpr int kSeqLen = 5;
inline constexpr int kWindowSize = kSeqLen * kInputDim;
inline constexpr int kQlstmQubits = kInputDim + kHiddenSize; // 7
inline constexpr int kQfwpQubits = 3;
inline constexpr int kQfwpLatent = 3;

/// How raw feature/hidden values become rotation angles.
enum class AngleEncoding { Raw, Arctan };

/// Where the trainable rotations sit relative to the entangling ladder.
enum class VariationalOrder { AfterLadder, BeforeLadder };

struct ModelConfig {
    AngleEncoding encoding = AngleEncoding::Raw;
    VariationalOrder variational_order = VariationalOrder::AfterLadder;
};

/// The shared structure of the four QLSTM gate circuits: 7 wires prepared
/// in |+> (Hadamard layer), RY encodings of [x_t; h_{t-1}], an even-odd
/// CNOT ladder, 7 trainable RYs, and <Z> on the first 3 wires.
/// Slots 0..6 are Encoding, 7..13 Variational.
qsim::CircuitProgram qlstm_gate_circuit(const ModelConfig& cfg = {});

/// The QFWP circuit: 3 wires from |000>, RY encodings of the latent z_t,
/// one entangling ladder, RYs carrying the fast-weight angles, <Z> on
/// wire 0. The fast-weight slots (3..5) are data-driven each step, so they
/// are tagged Encoding; the model has no trainable circuit angles.
qsim::CircuitProgram qfwp_circuit();

} // namespace qsb::models
