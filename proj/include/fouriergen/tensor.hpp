#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace fgen {

namespace detail {
struct TensorNode {
    std::vector<std::size_t> shape;
    std::shared_ptr<std::vector<double>> value;
    std::vector<double> grad;  // sized on first access, zero-filled
    bool requires_grad = false;
};
}  // namespace detail

// Dense row-major tensor of 64-bit reals. Copying a Tensor copies the
// handle; value storage is shared so parameters can be aliased across
// worker shards (shared values, private gradient buffers).
class Tensor {
public:
    Tensor() = default;

    static Tensor zeros(std::vector<std::size_t> shape, bool requires_grad = false);
    static Tensor full(std::vector<std::size_t> shape, double fill, bool requires_grad = false);
    static Tensor from(std::vector<std::size_t> shape, std::vector<double> values,
                       bool requires_grad = false);
    static Tensor scalar(double v, bool requires_grad = false);

    bool defined() const { return node_ != nullptr; }
    const std::vector<std::size_t>& shape() const { return node_->shape; }
    std::size_t rank() const { return node_->shape.size(); }
    std::size_t dim(std::size_t i) const { return node_->shape[i]; }
    std::size_t size() const { return node_->value->size(); }

    double* data() { return node_->value->data(); }
    const double* data() const { return node_->value->data(); }
    double operator[](std::size_t i) const { return (*node_->value)[i]; }
    double& operator[](std::size_t i) { return (*node_->value)[i]; }
    double scalar_value() const;

    bool requires_grad() const { return node_->requires_grad; }
    void set_requires_grad(bool rg) { node_->requires_grad = rg; }

    // Gradient buffer, allocated zero-filled on first use.
    double* grad();
    const double* grad() const;
    bool grad_allocated() const { return !node_->grad.empty(); }
    void zero_grad();

    // Deep copy of the values; fresh gradient state.
    Tensor clone() const;
    // Shares the value buffer, owns a private gradient buffer.
    Tensor alias_with_own_grad() const;

    bool same_node(const Tensor& other) const { return node_ == other.node_; }
    bool all_finite() const;
    void ensure_finite(const std::string& what) const;

private:
    std::shared_ptr<detail::TensorNode> node_;
};

// Ordered record of executed differentiable operations. Backward replays
// the closures in exact reverse execution order; execution order is a
// topological order of the graph, so its reverse is a valid reverse
// topological order.
class Tape {
public:
    void record(std::function<void()> backward_fn) {
        ops_.push_back(std::move(backward_fn));
    }

    // Seeds d(loss)/d(loss) = seed and propagates. The loss must be a
    // scalar produced under this tape.
    void backward(Tensor& loss, double seed = 1.0);

    std::size_t num_ops() const { return ops_.size(); }
    void clear() { ops_.clear(); }

private:
    std::vector<std::function<void()>> ops_;
};

}  // namespace fgen
