#pragma once

#include "qsb/matrix.hpp"
#include "qsb/qsim/state_vector.hpp"

#include <vector>

namespace qsb::qsim {

enum class GateKind { Hadamard, Ry, Cnot };

/// Whether a parameter slot carries a data-dependent angle or a trainable one.
enum class ParamRole { Encoding, Variational };

struct Gate {
    GateKind kind;
    int wire0;          // target for 1-qubit gates, control for CNOT
    int wire1 = -1;     // CNOT target
    int param_slot = -1; // RY only

    static Gate hadamard(int wire) { return {GateKind::Hadamard, wire}; }
    static Gate ry(int wire, int slot) { return {GateKind::Ry, wire, -1, slot}; }
    static Gate cnot(int control, int target) { return {GateKind::Cnot, control, target}; }
};

/// Ordered gate list plus the Pauli-Z observables to read out.
struct CircuitProgram {
    int n_qubits = 0;
    std::vector<Gate> gates;
    std::vector<int> observables;        // wires measured as <Z>
    std::vector<ParamRole> param_roles;  // indexed by param slot

    int param_count() const { return static_cast<int>(param_roles.size()); }

    /// Checks wire ranges, CNOT wires, and that RY slots cover 0..P-1 with
    /// each slot referenced exactly once.
    void validate() const;
};

/// CNOTs on (0,1),(2,3),... then (1,2),(3,4),...; open ladder, no wrap.
std::vector<Gate> build_even_odd_ladder(int n_qubits);

/// Executes the program from |0...0> and returns one <Z> per observable.
std::vector<double> run_circuit(const CircuitProgram& program,
                               std::span<const double> params);

/// Batched execution with per-sample parameter bindings (one row per
/// sample). Makes a single pass over the gate list with batch-wide
/// amplitude updates; row b of the result equals run_circuit on row b of
/// the bindings. Returns a B x K matrix of expectations.
Matrix run_circuit_batched(const CircuitProgram& program, const Matrix& params);

/// Applies one gate to a single state, reading any angle from params.
void apply_gate(StateVector& state, const Gate& gate, std::span<const double> params);

/// Applies the inverse of one gate (RY(-theta); H and CNOT are involutions).
void apply_gate_inverse(StateVector& state, const Gate& gate,
                        std::span<const double> params);

} // namespace qsb::qsim
