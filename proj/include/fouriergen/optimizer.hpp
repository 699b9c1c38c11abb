#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fouriergen/tensor.hpp"

namespace fgen {

// Adaptive-moment state mirroring a named parameter list.
struct OptimizerState {
    std::vector<Tensor> first_moment;
    std::vector<Tensor> second_moment;
    std::uint64_t step = 0;
};

OptimizerState make_optimizer_state(const std::vector<std::pair<std::string, Tensor*>>& params);

// Bias-corrected Adam update over the gradients currently held by the
// parameter tensors. A non-finite gradient aborts before any tensor is
// touched, reporting the parameter name.
void adam_step(const std::vector<std::pair<std::string, Tensor*>>& params, OptimizerState& state,
               double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

}  // namespace fgen
