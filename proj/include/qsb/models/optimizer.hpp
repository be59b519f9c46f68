#pragma once

#include "qsb/models/params.hpp"

#include <memory>
#include <span>

namespace qsb::models {

/// First-order update rule applied after each backward pass. Gradients are
/// flat in canonical parameter order.
class Optimizer {
  public:
    virtual ~Optimizer() = default;
    virtual void step(ParamSet& params, std::span<const double> grads) = 0;
};

class SgdOptimizer final : public Optimizer {
  public:
    explicit SgdOptimizer(double learning_rate) : lr_(learning_rate) {}
    void step(ParamSet& params, std::span<const double> grads) override;

  private:
    double lr_;
};

class AdamOptimizer final : public Optimizer {
  public:
    AdamOptimizer(double learning_rate, std::size_t param_count, double beta1 = 0.9,
                  double beta2 = 0.999, double epsilon = 1e-8);
    void step(ParamSet& params, std::span<const double> grads) override;

  private:
    double lr_, beta1_, beta2_, eps_;
    long t_ = 0;
    std::vector<double> m_, v_;
};

/// name is "adam" or "sgd".
std::unique_ptr<Optimizer> make_optimizer(const std::string& name, double learning_rate,
                                          std::size_t param_count);

} // namespace qsb::models
