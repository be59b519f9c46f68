#pragma once

#include "qsb/errors.hpp"

#include <atomic>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qsb::qsim {

inline constexpr int kMaxQubits = 12;

/// Pure n-qubit state as 2^n complex amplitudes.
///
/// Bit convention: wire 0 is the most significant bit of the amplitude
/// index, so for n=2 the basis order is |00>, |01>, |10>, |11> with the
/// left bit on wire 0.
class StateVector {
  public:
    /// Initializes |0...0>.
    explicit StateVector(int n_qubits);
    StateVector(const StateVector& other);
    StateVector(StateVector&&) noexcept = default;
    StateVector& operator=(const StateVector&) = default;
    StateVector& operator=(StateVector&&) noexcept = default;

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::span<std::complex<double>> amplitudes() { return amps_; }

    void apply_hadamard(int wire);
    void apply_ry(int wire, double theta);
    void apply_cnot(int control, int target);
    /// Multiplies amplitudes with target bit 1 by -1 (Pauli-Z).
    void apply_pauli_z(int wire);
    /// Applies an arbitrary 2x2 real matrix [[m00,m01],[m10,m11]] on one
    /// wire. Not necessarily unitary; used for gate derivatives.
    void apply_single_qubit(int wire, double m00, double m01, double m10, double m11);

    double expval_z(int wire) const;
    double norm() const;

    /// Element-wise copy from another state of the same size. Never
    /// reallocates, so it does not count as a buffer allocation.
    void assign_from(const StateVector& other);

    /// Number of amplitude buffers allocated so far (process-wide).
    /// Lets tests pin the adjoint sweep's working-set contract.
    static std::uint64_t allocation_count() { return alloc_count_.load(); }

  private:
    void check_wire(int wire) const;

    int n_qubits_;
    std::vector<std::complex<double>> amps_;

    static std::atomic<std::uint64_t> alloc_count_;
};

/// |0...0> on n wires.
StateVector init_zero(int n_qubits);

/// Uniform superposition |+...+>; equals Hadamard on every wire of |0...0>.
StateVector init_plus(int n_qubits);

/// Batch of B independent n-qubit states.
///
/// Layout is amplitude-major: the B values for amplitude index i are
/// contiguous at data[i*B .. i*B+B). A gate update walks the amplitude
/// pairs once and streams over the batch in the inner loop, which is what
/// makes the batched forward path vectorize.
class BatchedStateVector {
  public:
    /// All rows initialized to |0...0>.
    BatchedStateVector(int batch, int n_qubits);

    int batch() const { return batch_; }
    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return dim_; }

    void apply_hadamard(int wire);
    /// Per-sample rotation angles; thetas.size() must equal batch().
    void apply_ry(int wire, std::span<const double> thetas);
    void apply_cnot(int control, int target);

    /// Writes one expectation per sample into out (size batch()).
    void expval_z(int wire, std::span<double> out) const;

    /// Copies sample b out as a standalone state.
    StateVector row(int b) const;

    std::span<const std::complex<double>> raw() const { return amps_; }

  private:
    void check_wire(int wire) const;

    int batch_;
    int n_qubits_;
    std::size_t dim_;
    std::vector<std::complex<double>> amps_;
    std::vector<double> cos_scratch_;
    std::vector<double> sin_scratch_;
};

} // namespace qsb::qsim
