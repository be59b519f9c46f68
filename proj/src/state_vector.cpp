#include "qsb/qsim/state_vector.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsb::qsim {

namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(n_qubits));
    }
}

// Wire 0 is the MSB of the amplitude index.
inline std::size_t wire_mask(int n_qubits, int wire) {
    return std::size_t{1} << (n_qubits - 1 - wire);
}

} // namespace

std::atomic<std::uint64_t> StateVector::alloc_count_{0};

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
    alloc_count_.fetch_add(1, std::memory_order_relaxed);
}

StateVector::StateVector(const StateVector& other)
    : n_qubits_(other.n_qubits_), amps_(other.amps_) {
    alloc_count_.fetch_add(1, std::memory_order_relaxed);
}

void StateVector::check_wire(int wire) const {
    if (wire < 0 || wire >= n_qubits_) {
        throw IndexError("wire " + std::to_string(wire) + " out of range for " +
                         std::to_string(n_qubits_) + " qubits");
    }
}

void StateVector::apply_hadamard(int wire) {
    check_wire(wire);
    const std::size_t mask = wire_mask(n_qubits_, wire);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * mask) {
        for (std::size_t off = 0; off < mask; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + mask;
            const auto a0 = amps_[i0];
            const auto a1 = amps_[i1];
            amps_[i0] = (a0 + a1) * inv_sqrt2;
            amps_[i1] = (a0 - a1) * inv_sqrt2;
        }
    }
}

void StateVector::apply_ry(int wire, double theta) {
    check_wire(wire);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::size_t mask = wire_mask(n_qubits_, wire);
    for (std::size_t base = 0; base < amps_.size(); base += 2 * mask) {
        for (std::size_t off = 0; off < mask; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + mask;
            const auto a0 = amps_[i0];
            const auto a1 = amps_[i1];
            amps_[i0] = c * a0 - s * a1;
            amps_[i1] = s * a0 + c * a1;
        }
    }
}

void StateVector::apply_cnot(int control, int target) {
    check_wire(control);
    check_wire(target);
    if (control == target) {
        throw ConfigError("cnot control and target must differ");
    }
    const std::size_t cmask = wire_mask(n_qubits_, control);
    const std::size_t tmask = wire_mask(n_qubits_, target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

void StateVector::apply_pauli_z(int wire) {
    check_wire(wire);
    const std::size_t mask = wire_mask(n_qubits_, wire);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::apply_single_qubit(int wire, double m00, double m01, double m10,
                                     double m11) {
    check_wire(wire);
    const std::size_t mask = wire_mask(n_qubits_, wire);
    for (std::size_t base = 0; base < amps_.size(); base += 2 * mask) {
        for (std::size_t off = 0; off < mask; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + mask;
            const auto a0 = amps_[i0];
            const auto a1 = amps_[i1];
            amps_[i0] = m00 * a0 + m01 * a1;
            amps_[i1] = m10 * a0 + m11 * a1;
        }
    }
}

double StateVector::expval_z(int wire) const {
    check_wire(wire);
    const std::size_t mask = wire_mask(n_qubits_, wire);
    double total = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const double p = std::norm(amps_[i]);
        total += (i & mask) ? -p : p;
    }
    return total;
}

double StateVector::norm() const {
    double total = 0.0;
    for (const auto& a : amps_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

void StateVector::assign_from(const StateVector& other) {
    if (other.amps_.size() != amps_.size()) {
        throw ConfigError("assign_from requires states of equal size");
    }
    std::copy(other.amps_.begin(), other.amps_.end(), amps_.begin());
}

StateVector init_zero(int n_qubits) { return StateVector(n_qubits); }

StateVector init_plus(int n_qubits) {
    StateVector sv(n_qubits);
    const double amp = std::pow(2.0, -0.5 * n_qubits);
    for (auto& a : sv.amplitudes()) {
        a = {amp, 0.0};
    }
    return sv;
}

BatchedStateVector::BatchedStateVector(int batch, int n_qubits)
    : batch_(batch), n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    if (batch < 1) {
        throw ConfigError("batch size must be >= 1");
    }
    dim_ = std::size_t{1} << n_qubits;
    amps_.assign(dim_ * static_cast<std::size_t>(batch), {0.0, 0.0});
    for (int b = 0; b < batch_; ++b) {
        amps_[b] = {1.0, 0.0};
    }
}

void BatchedStateVector::check_wire(int wire) const {
    if (wire < 0 || wire >= n_qubits_) {
        throw IndexError("wire " + std::to_string(wire) + " out of range for " +
                         std::to_string(n_qubits_) + " qubits");
    }
}

void BatchedStateVector::apply_hadamard(int wire) {
    check_wire(wire);
    const std::size_t mask = wire_mask(n_qubits_, wire);
    const std::size_t bs = static_cast<std::size_t>(batch_);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (std::size_t base = 0; base < dim_; base += 2 * mask) {
        for (std::size_t off = 0; off < mask; ++off) {
            std::complex<double>* p0 = amps_.data() + (base + off) * bs;
            std::complex<double>* p1 = p0 + mask * bs;
            for (std::size_t b = 0; b < bs; ++b) {
                const auto a0 = p0[b];
                const auto a1 = p1[b];
                p0[b] = (a0 + a1) * inv_sqrt2;
                p1[b] = (a0 - a1) * inv_sqrt2;
            }
        }
    }
}

void BatchedStateVector::apply_ry(int wire, std::span<const double> thetas) {
    check_wire(wire);
    if (thetas.size() != static_cast<std::size_t>(batch_)) {
        throw ConfigError("apply_ry expects one angle per sample");
    }
    const std::size_t bs = static_cast<std::size_t>(batch_);
    cos_scratch_.resize(bs);
    sin_scratch_.resize(bs);
    for (std::size_t b = 0; b < bs; ++b) {
        cos_scratch_[b] = std::cos(thetas[b] / 2.0);
        sin_scratch_[b] = std::sin(thetas[b] / 2.0);
    }
    const std::size_t mask = wire_mask(n_qubits_, wire);
    const double* cs = cos_scratch_.data();
    const double* sn = sin_scratch_.data();
    for (std::size_t base = 0; base < dim_; base += 2 * mask) {
        for (std::size_t off = 0; off < mask; ++off) {
            std::complex<double>* p0 = amps_.data() + (base + off) * bs;
            std::complex<double>* p1 = p0 + mask * bs;
            for (std::size_t b = 0; b < bs; ++b) {
                const auto a0 = p0[b];
                const auto a1 = p1[b];
                p0[b] = cs[b] * a0 - sn[b] * a1;
                p1[b] = sn[b] * a0 + cs[b] * a1;
            }
        }
    }
}

void BatchedStateVector::apply_cnot(int control, int target) {
    check_wire(control);
    check_wire(target);
    if (control == target) {
        throw ConfigError("cnot control and target must differ");
    }
    const std::size_t cmask = wire_mask(n_qubits_, control);
    const std::size_t tmask = wire_mask(n_qubits_, target);
    const std::size_t bs = static_cast<std::size_t>(batch_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::complex<double>* p0 = amps_.data() + i * bs;
            std::complex<double>* p1 = amps_.data() + (i | tmask) * bs;
            for (std::size_t b = 0; b < bs; ++b) {
                std::swap(p0[b], p1[b]);
            }
        }
    }
}

void BatchedStateVector::expval_z(int wire, std::span<double> out) const {
    check_wire(wire);
    if (out.size() != static_cast<std::size_t>(batch_)) {
        throw ConfigError("expval_z output span must have one slot per sample");
    }
    std::fill(out.begin(), out.end(), 0.0);
    const std::size_t mask = wire_mask(n_qubits_, wire);
    const std::size_t bs = static_cast<std::size_t>(batch_);
    for (std::size_t i = 0; i < dim_; ++i) {
        const std::complex<double>* p = amps_.data() + i * bs;
        const double sign = (i & mask) ? -1.0 : 1.0;
        for (std::size_t b = 0; b < bs; ++b) {
            out[b] += sign * std::norm(p[b]);
        }
    }
}

StateVector BatchedStateVector::row(int b) const {
    if (b < 0 || b >= batch_) {
        throw IndexError("sample index out of range");
    }
    StateVector sv(n_qubits_);
    auto dst = sv.amplitudes();
    const std::size_t bs = static_cast<std::size_t>(batch_);
    for (std::size_t i = 0; i < dim_; ++i) {
        dst[i] = amps_[i * bs + static_cast<std::size_t>(b)];
    }
    return sv;
}

} // namespace qsb::qsim
