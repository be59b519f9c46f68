#include "qsb/models/params.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qsb::models {

std::string to_string(ModelKind kind) {
    return kind == ModelKind::Qlstm ? "qlstm" : "qfwp";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "qlstm") {
        return ModelKind::Qlstm;
    }
    if (name == "qfwp") {
        return ModelKind::Qfwp;
    }
    throw ConfigError("unknown model kind: " + name);
}

std::size_t ParamSet::total_size() const {
    std::size_t n = 0;
    for (const auto& a : arrays) {
        n += a.values.size();
    }
    return n;
}

const NamedArray& ParamSet::find(const std::string& name) const {
    for (const auto& a : arrays) {
        if (a.name == name) {
            return a;
        }
    }
    throw ConfigError("no parameter array named " + name);
}

NamedArray& ParamSet::find(const std::string& name) {
    for (auto& a : arrays) {
        if (a.name == name) {
            return a;
        }
    }
    throw ConfigError("no parameter array named " + name);
}

std::vector<double> ParamSet::flatten() const {
    std::vector<double> out;
    out.reserve(total_size());
    for (const auto& a : arrays) {
        out.insert(out.end(), a.values.begin(), a.values.end());
    }
    return out;
}

ParamCounts count_parameters(const ParamSet& params) {
    ParamCounts counts;
    for (const auto& a : params.arrays) {
        const int n = static_cast<int>(a.values.size());
        counts.total += n;
        if (a.category == ParamCategory::Quantum) {
            counts.quantum += n;
        } else {
            counts.classical += n;
        }
    }
    return counts;
}

namespace {

class SeededUniform {
  public:
    explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}

    // [0, 1) with 53 bits; avoids distribution objects so the stream is
    // identical across standard library implementations.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  private:
    std::mt19937_64 engine_;
};

std::vector<double> draw(SeededUniform& rng, std::size_t n, double lo, double hi) {
    std::vector<double> out(n);
    for (auto& x : out) {
        x = rng.range(lo, hi);
    }
    return out;
}

double glorot_bound(int fan_in, int fan_out) {
    return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

} // namespace

ParamSet init_params(ModelKind kind, std::uint64_t seed) {
    SeededUniform rng(seed);
    ParamSet params;
    params.kind = kind;
    if (kind == ModelKind::Qlstm) {
        const double pi = std::numbers::pi;
        for (const char* gate : {"forget", "input", "cell", "output"}) {
            params.arrays.push_back({std::string("vqc_theta_") + gate,
                                     ParamCategory::Quantum, draw(rng, 7, -pi, pi)});
        }
        const double a_out = glorot_bound(3, 1);
        params.arrays.push_back(
            {"w_out", ParamCategory::Classical, draw(rng, 3, -a_out, a_out)});
        params.arrays.push_back({"b_out", ParamCategory::Classical, {0.0}});
        const ParamCounts c = count_parameters(params);
        if (c.total != 32 || c.quantum != 28 || c.classical != 4) {
            throw ConfigError("qlstm parameter accounting violated");
        }
    } else {
        const double a_e = glorot_bound(4, 3);
        const double a_l = glorot_bound(3, 1);
        const double a_q = glorot_bound(3, 3);
        const double a_p = glorot_bound(1, 1);
        params.arrays.push_back(
            {"w_encoder", ParamCategory::Classical, draw(rng, 12, -a_e, a_e)});
        params.arrays.push_back({"b_encoder", ParamCategory::Classical, {0.0, 0.0, 0.0}});
        params.arrays.push_back(
            {"w_layer_sel", ParamCategory::Classical, draw(rng, 3, -a_l, a_l)});
        params.arrays.push_back({"b_layer_sel", ParamCategory::Classical, {0.0}});
        params.arrays.push_back(
            {"w_qubit_sel", ParamCategory::Classical, draw(rng, 9, -a_q, a_q)});
        params.arrays.push_back(
            {"b_qubit_sel", ParamCategory::Classical, {0.0, 0.0, 0.0}});
        params.arrays.push_back(
            {"w_post", ParamCategory::Classical, draw(rng, 1, -a_p, a_p)});
        params.arrays.push_back({"b_post", ParamCategory::Classical, {0.0}});
        const ParamCounts c = count_parameters(params);
        if (c.total != 33 || c.quantum != 0 || c.classical != 33) {
            throw ConfigError("qfwp parameter accounting violated");
        }
    }
    return params;
}

void assert_epc_alignment(const ParamSet& qlstm, const ParamSet& qfwp) {
    const int diff =
        count_parameters(qlstm).total - count_parameters(qfwp).total;
    if (diff != -1) {
        throw ConfigError("equal-parameter-count alignment violated: difference " +
                          std::to_string(diff) + ", expected -1");
    }
}

} // namespace qsb::models
