#include "qsb/models/circuits.hpp"

namespace qsb::models {

using qsim::CircuitProgram;
using qsim::Gate;
using qsim::ParamRole;

CircuitProgram qlstm_gate_circuit(const ModelConfig& cfg) {
    CircuitProgram program;
    program.n_qubits = kQlstmQubits;
    for (int w = 0; w < kQlstmQubits; ++w) {
        program.gates.push_back(Gate::hadamard(w));
    }
    for (int w = 0; w < kQlstmQubits; ++w) {
        program.gates.push_back(Gate::ry(w, w));
    }
    const auto ladder = qsim::build_even_odd_ladder(kQlstmQubits);
    auto push_variational = [&program] {
        for (int w = 0; w < kQlstmQubits; ++w) {
            program.gates.push_back(Gate::ry(w, kQlstmQubits + w));
        }
    };
    if (cfg.variational_order == VariationalOrder::AfterLadder) {
        program.gates.insert(program.gates.end(), ladder.begin(), ladder.end());
        push_variational();
    } else {
        push_variational();
        program.gates.insert(program.gates.end(), ladder.begin(), ladder.end());
    }
    for (int w = 0; w < kHiddenSize; ++w) {
        program.observables.push_back(w);
    }
    program.param_roles.assign(static_cast<std::size_t>(kQlstmQubits),
                               ParamRole::Encoding);
    program.param_roles.insert(program.param_roles.end(),
                               static_cast<std::size_t>(kQlstmQubits),
                               ParamRole::Variational);
    program.validate();
    return program;
}

CircuitProgram qfwp_circuit() {
    CircuitProgram program;
    program.n_qubits = kQfwpQubits;
    for (int w = 0; w < kQfwpQubits; ++w) {
        program.gates.push_back(Gate::ry(w, w));
    }
    const auto ladder = qsim::build_even_odd_ladder(kQfwpQubits);
    program.gates.insert(program.gates.end(), ladder.begin(), ladder.end());
    for (int w = 0; w < kQfwpQubits; ++w) {
        program.gates.push_back(Gate::ry(w, kQfwpQubits + w));
    }
    program.observables.push_back(0);
    program.param_roles.assign(static_cast<std::size_t>(2 * kQfwpQubits),
                               ParamRole::Encoding);
    program.validate();
    return program;
}

} // namespace qsb::models
