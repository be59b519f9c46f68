#pragma once

#include "qsb/errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qsb::models {

enum class ModelKind { Qlstm, Qfwp };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

enum class ParamCategory { Quantum, Classical };

struct NamedArray {
    std::string name;
    ParamCategory category;
    std::vector<double> values;
};

/// Trainable parameters of one model, as a flat list of named arrays.
/// Array order is canonical: it defines the layout of gradient vectors,
/// optimizer state, and checkpoints.
struct ParamSet {
    ModelKind kind;
    std::vector<NamedArray> arrays;

    std::size_t total_size() const;
    const NamedArray& find(const std::string& name) const;
    NamedArray& find(const std::string& name);
    std::vector<double> flatten() const;
};

struct ParamCounts {
    int total = 0;
    int quantum = 0;
    int classical = 0;
};

ParamCounts count_parameters(const ParamSet& params);

/// Deterministic initialization: the same seed yields bit-identical
/// parameters, so batched and non-batched arms of a comparison start from
/// the same point. Verifies the per-model parameter accounting (32 = 28
/// quantum + 4 classical for QLSTM, 33 all-classical for QFWP) on
/// construction.
ParamSet init_params(ModelKind kind, std::uint64_t seed);

/// The equal-parameter-count contract between the two models:
/// total(QLSTM) - total(QFWP) == -1. Throws ConfigError when violated.
void assert_epc_alignment(const ParamSet& qlstm, const ParamSet& qfwp);

} // namespace qsb::models
