#include "qsb/qsim/circuit.hpp"

#include <string>

namespace qsb::qsim {

void CircuitProgram::validate() const {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("program qubit count out of range");
    }
    std::vector<int> slot_refs(param_roles.size(), 0);
    for (const auto& g : gates) {
        if (g.wire0 < 0 || g.wire0 >= n_qubits) {
            throw IndexError("gate wire out of range");
        }
        switch (g.kind) {
        case GateKind::Hadamard:
            if (g.param_slot != -1) {
                throw ConfigError("hadamard carries no parameter slot");
            }
            break;
        case GateKind::Ry:
            if (g.param_slot < 0 || g.param_slot >= param_count()) {
                throw ConfigError("ry slot " + std::to_string(g.param_slot) +
                                  " outside dense range 0.." +
                                  std::to_string(param_count() - 1));
            }
            slot_refs[static_cast<std::size_t>(g.param_slot)]++;
            break;
        case GateKind::Cnot:
            if (g.wire1 < 0 || g.wire1 >= n_qubits) {
                throw IndexError("cnot target wire out of range");
            }
            if (g.wire0 == g.wire1) {
                throw ConfigError("cnot control and target must differ");
            }
            if (g.param_slot != -1) {
                throw ConfigError("cnot carries no parameter slot");
            }
            break;
        }
    }
    for (std::size_t s = 0; s < slot_refs.size(); ++s) {
        if (slot_refs[s] != 1) {
            throw ConfigError("param slot " + std::to_string(s) + " referenced " +
                              std::to_string(slot_refs[s]) + " times, expected 1");
        }
    }
    for (int w : observables) {
        if (w < 0 || w >= n_qubits) {
            throw IndexError("observable wire out of range");
        }
    }
}

std::vector<Gate> build_even_odd_ladder(int n_qubits) {
    if (n_qubits < 2) {
        throw ConfigError("even-odd ladder needs at least 2 qubits");
    }
    std::vector<Gate> gates;
    for (int w = 0; w + 1 < n_qubits; w += 2) {
        gates.push_back(Gate::cnot(w, w + 1));
    }
    for (int w = 1; w + 1 < n_qubits; w += 2) {
        gates.push_back(Gate::cnot(w, w + 1));
    }
    return gates;
}

void apply_gate(StateVector& state, const Gate& gate, std::span<const double> params) {
    switch (gate.kind) {
    case GateKind::Hadamard:
        state.apply_hadamard(gate.wire0);
        break;
    case GateKind::Ry:
        state.apply_ry(gate.wire0, params[static_cast<std::size_t>(gate.param_slot)]);
        break;
    case GateKind::Cnot:
        state.apply_cnot(gate.wire0, gate.wire1);
        break;
    }
}

void apply_gate_inverse(StateVector& state, const Gate& gate,
                        std::span<const double> params) {
    switch (gate.kind) {
    case GateKind::Hadamard:
        state.apply_hadamard(gate.wire0);
        break;
    case GateKind::Ry:
        state.apply_ry(gate.wire0, -params[static_cast<std::size_t>(gate.param_slot)]);
        break;
    case GateKind::Cnot:
        state.apply_cnot(gate.wire0, gate.wire1);
        break;
    }
}

std::vector<double> run_circuit(const CircuitProgram& program,
                               std::span<const double> params) {
    if (params.size() != static_cast<std::size_t>(program.param_count())) {
        throw ConfigError("expected " + std::to_string(program.param_count()) +
                          " parameters, got " + std::to_string(params.size()));
    }
    StateVector state(program.n_qubits);
    for (const auto& g : program.gates) {
        apply_gate(state, g, params);
    }
    std::vector<double> out;
    out.reserve(program.observables.size());
    for (int w : program.observables) {
        out.push_back(state.expval_z(w));
    }
    return out;
}

Matrix run_circuit_batched(const CircuitProgram& program, const Matrix& params) {
    if (params.cols() != static_cast<std::size_t>(program.param_count())) {
        throw ConfigError("each binding row must hold " +
                          std::to_string(program.param_count()) + " parameters, got " +
                          std::to_string(params.cols()));
    }
    const int batch = static_cast<int>(params.rows());
    BatchedStateVector state(batch, program.n_qubits);
    std::vector<double> thetas(static_cast<std::size_t>(batch));
    for (const auto& g : program.gates) {
        switch (g.kind) {
        case GateKind::Hadamard:
            state.apply_hadamard(g.wire0);
            break;
        case GateKind::Ry:
            for (int b = 0; b < batch; ++b) {
                thetas[static_cast<std::size_t>(b)] =
                    params(static_cast<std::size_t>(b),
                           static_cast<std::size_t>(g.param_slot));
            }
            state.apply_ry(g.wire0, thetas);
            break;
        case GateKind::Cnot:
            state.apply_cnot(g.wire0, g.wire1);
            break;
        }
    }
    Matrix out(static_cast<std::size_t>(batch), program.observables.size());
    std::vector<double> column(static_cast<std::size_t>(batch));
    for (std::size_t k = 0; k < program.observables.size(); ++k) {
        state.expval_z(program.observables[k], column);
        for (int b = 0; b < batch; ++b) {
            out(static_cast<std::size_t>(b), k) = column[static_cast<std::size_t>(b)];
        }
    }
    return out;
}

} // namespace qsb::qsim
