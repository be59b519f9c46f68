#include "qsb/models/optimizer.hpp"

#include <cmath>

namespace qsb::models {

namespace {

void check_size(const ParamSet& params, std::span<const double> grads) {
    if (grads.size() != params.total_size()) {
        throw ConfigError("gradient length does not match parameter count");
    }
}

} // namespace

void SgdOptimizer::step(ParamSet& params, std::span<const double> grads) {
    check_size(params, grads);
    std::size_t i = 0;
    for (auto& arr : params.arrays) {
        for (auto& x : arr.values) {
            x -= lr_ * grads[i++];
        }
    }
}

AdamOptimizer::AdamOptimizer(double learning_rate, std::size_t param_count,
                             double beta1, double beta2, double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon),
      m_(param_count, 0.0), v_(param_count, 0.0) {}

void AdamOptimizer::step(ParamSet& params, std::span<const double> grads) {
    check_size(params, grads);
    if (grads.size() != m_.size()) {
        throw ConfigError("optimizer state sized for a different model");
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    std::size_t i = 0;
    for (auto& arr : params.arrays) {
        for (auto& x : arr.values) {
            const double g = grads[i];
            m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
            v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g * g;
            x -= lr_ * (m_[i] / bc1) / (std::sqrt(v_[i] / bc2) + eps_);
            ++i;
        }
    }
}

std::unique_ptr<Optimizer> make_optimizer(const std::string& name, double learning_rate,
                                          std::size_t param_count) {
    if (name == "adam") {
        return std::make_unique<AdamOptimizer>(learning_rate, param_count);
    }
    if (name == "sgd") {
        return std::make_unique<SgdOptimizer>(learning_rate);
    }
    throw ConfigError("unknown optimizer: " + name);
}

} // namespace qsb::models
