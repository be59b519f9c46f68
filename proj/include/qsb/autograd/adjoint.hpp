#pragma once

#include "qsb/matrix.hpp"
#include "qsb/qsim/circuit.hpp"

namespace qsb::autograd {

struct AdjointResult {
    std::vector<double> expectations; // one per observable
    Matrix jacobian;                  // K x P, d<Z_k>/d theta_p
};

/// Expectations and their full jacobian for a {H, RY, CNOT} program with
/// Pauli-Z observables, computed by one forward pass plus one reverse sweep
/// shared across observables. Partials are produced for every slot,
/// encoding and variational alike, so callers can chain gradients into
/// upstream inputs. Working memory is K+2 state vectors, independent of
/// gate count.
AdjointResult adjoint_expval_grad(const qsim::CircuitProgram& program,
                                  std::span<const double> params);

} // namespace qsb::autograd
