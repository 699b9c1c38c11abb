#include "fouriergen/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace fgen {

OptimizerState make_optimizer_state(const std::vector<std::pair<std::string, Tensor*>>& params) {
    OptimizerState st;
    st.first_moment.reserve(params.size());
    st.second_moment.reserve(params.size());
    for (const auto& [name, t] : params) {
        st.first_moment.push_back(Tensor::zeros(t->shape()));
        st.second_moment.push_back(Tensor::zeros(t->shape()));
    }
    return st;
}

void adam_step(const std::vector<std::pair<std::string, Tensor*>>& params, OptimizerState& state,
               double lr, double beta1, double beta2, double eps) {
    if (state.first_moment.size() != params.size()) {
        throw std::invalid_argument("adam_step: optimizer state does not match parameter list");
    }
    for (const auto& [name, t] : params) {
        const double* g = t->grad();
        for (std::size_t i = 0; i < t->size(); ++i) {
            if (!std::isfinite(g[i])) {
                throw std::runtime_error("adam_step: non-finite gradient in parameter " + name);
            }
        }
    }

    state.step += 1;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));
    for (std::size_t p = 0; p < params.size(); ++p) {
        Tensor& w = *params[p].second;
        const double* g = w.grad();
        double* m = state.first_moment[p].data();
        double* v = state.second_moment[p].data();
        double* x = w.data();
        for (std::size_t i = 0; i < w.size(); ++i) {
            m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
            v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
            const double m_hat = m[i] / bc1;
            const double v_hat = v[i] / bc2;
            x[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
        }
    }
}

}  // namespace fgen
