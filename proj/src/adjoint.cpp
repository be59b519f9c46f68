#include "qsb/autograd/adjoint.hpp"

#include <cmath>
#include <numbers>

namespace qsb::autograd {

using qsim::Gate;
using qsim::GateKind;
using qsim::StateVector;

namespace {

double real_inner_product(const StateVector& a, const StateVector& b) {
    const auto xs = a.amplitudes();
    const auto ys = b.amplitudes();
    double total = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        // Re(conj(x) * y)
        total += xs[i].real() * ys[i].real() + xs[i].imag() * ys[i].imag();
    }
    return total;
}

} // namespace

AdjointResult adjoint_expval_grad(const qsim::CircuitProgram& program,
                                  std::span<const double> params) {
    if (params.size() != static_cast<std::size_t>(program.param_count())) {
        throw ConfigError("adjoint: parameter count mismatch");
    }
    const std::size_t num_obs = program.observables.size();
    const std::size_t num_params = params.size();

    // Forward pass: lambda = U_N ... U_1 |0>.
    StateVector lambda(program.n_qubits);
    for (const auto& g : program.gates) {
        qsim::apply_gate(lambda, g, params);
    }

    AdjointResult result;
    result.expectations.reserve(num_obs);
    for (int w : program.observables) {
        result.expectations.push_back(lambda.expval_z(w));
    }
    result.jacobian = Matrix(num_obs, num_params, 0.0);

    // phi_k = Z_k |psi_final>; one buffer per observable.
    std::vector<StateVector> phi;
    phi.reserve(num_obs);
    for (std::size_t k = 0; k < num_obs; ++k) {
        phi.emplace_back(lambda);
        phi.back().apply_pauli_z(program.observables[k]);
    }

    StateVector mu(program.n_qubits);

    // Reverse sweep. At gate j (descending) the invariants are
    //   lambda = U_{j-1} ... U_1 |0>   after the un-apply below, and
    //   phi_k  = (U_{j+1..N})^dag Z_k |psi_final>,
    // so d<Z_k>/dtheta_j = 2 Re <phi_k | dU_j/dtheta | lambda>.
    for (auto it = program.gates.rbegin(); it != program.gates.rend(); ++it) {
        const Gate& g = *it;
        qsim::apply_gate_inverse(lambda, g, params);
        if (g.kind == GateKind::Ry) {
            // dRY(theta)/dtheta = (1/2) RY(theta + pi)
            const double theta = params[static_cast<std::size_t>(g.param_slot)];
            const double c = std::cos(theta / 2.0 + std::numbers::pi / 2.0) * 0.5;
            const double s = std::sin(theta / 2.0 + std::numbers::pi / 2.0) * 0.5;
            mu.assign_from(lambda);
            mu.apply_single_qubit(g.wire0, c, -s, s, c);
            for (std::size_t k = 0; k < num_obs; ++k) {
                result.jacobian(k, static_cast<std::size_t>(g.param_slot)) +=
                    2.0 * real_inner_product(phi[k], mu);
            }
        }
        for (auto& p : phi) {
            qsim::apply_gate_inverse(p, g, params);
        }
    }
    return result;
}

} // namespace qsb::autograd
