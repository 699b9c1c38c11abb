#include "fouriergen/tensor.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fgen {

namespace {
std::size_t shape_product(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) {
        if (d == 0) throw std::invalid_argument("tensor: zero extent in shape");
        n *= d;
    }
    return n;
}
}  // namespace

Tensor Tensor::zeros(std::vector<std::size_t> shape, bool requires_grad) {
    return full(std::move(shape), 0.0, requires_grad);
}

Tensor Tensor::full(std::vector<std::size_t> shape, double fill, bool requires_grad) {
    Tensor t;
    t.node_ = std::make_shared<detail::TensorNode>();
    t.node_->shape = std::move(shape);
    t.node_->value = std::make_shared<std::vector<double>>(shape_product(t.node_->shape), fill);
    t.node_->requires_grad = requires_grad;
    return t;
}

Tensor Tensor::from(std::vector<std::size_t> shape, std::vector<double> values,
                    bool requires_grad) {
    if (shape_product(shape) != values.size()) {
        throw std::invalid_argument("tensor: shape does not match value count");
    }
    Tensor t;
    t.node_ = std::make_shared<detail::TensorNode>();
    t.node_->shape = std::move(shape);
    t.node_->value = std::make_shared<std::vector<double>>(std::move(values));
    t.node_->requires_grad = requires_grad;
    return t;
}

Tensor Tensor::scalar(double v, bool requires_grad) {
    return from({1}, {v}, requires_grad);
}

double Tensor::scalar_value() const {
    if (size() != 1) throw std::logic_error("tensor: scalar_value on non-scalar");
    return (*node_->value)[0];
}

double* Tensor::grad() {
    if (node_->grad.empty()) node_->grad.assign(size(), 0.0);
    return node_->grad.data();
}

const double* Tensor::grad() const {
    return const_cast<Tensor*>(this)->grad();
}

void Tensor::zero_grad() {
    if (!node_->grad.empty()) node_->grad.assign(size(), 0.0);
}

Tensor Tensor::clone() const {
    Tensor t;
    t.node_ = std::make_shared<detail::TensorNode>();
    t.node_->shape = node_->shape;
    t.node_->value = std::make_shared<std::vector<double>>(*node_->value);
    t.node_->requires_grad = node_->requires_grad;
    return t;
}

Tensor Tensor::alias_with_own_grad() const {
    Tensor t;
    t.node_ = std::make_shared<detail::TensorNode>();
    t.node_->shape = node_->shape;
    t.node_->value = node_->value;  // shared storage
    t.node_->requires_grad = node_->requires_grad;
    return t;
}

bool Tensor::all_finite() const {
    for (double v : *node_->value) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void Tensor::ensure_finite(const std::string& what) const {
    if (!all_finite()) throw std::runtime_error("non-finite values in " + what);
}

void Tape::backward(Tensor& loss, double seed) {
    if (loss.size() != 1) throw std::logic_error("tape: backward target must be scalar");
    loss.grad()[0] += seed;
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) (*it)();
}

}  // namespace fgen
