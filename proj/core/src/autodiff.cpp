#include "dphg/autodiff.hpp"

#include "dphg/error.hpp"

namespace dphg::nn {

Var Tape::push(Matrix value, bool requires_grad, BackwardFn backward) {
  nodes_.push_back(Node{std::move(value), Matrix(), std::move(backward), requires_grad});
  return Var(this, nodes_.size() - 1);
}

Var Tape::constant(Matrix value) { return push(std::move(value), false, nullptr); }

Var Tape::parameter(Matrix value) { return push(std::move(value), true, nullptr); }

Var Tape::record(Matrix value, std::initializer_list<Var> inputs, BackwardFn backward) {
  bool needs = false;
  for (const Var& in : inputs) needs = needs || nodes_[in.id()].requires_grad;
  return push(std::move(value), needs, needs ? std::move(backward) : nullptr);
}

Var Tape::record(Matrix value, const std::vector<Var>& inputs, BackwardFn backward) {
  bool needs = false;
  for (const Var& in : inputs) needs = needs || nodes_[in.id()].requires_grad;
  return push(std::move(value), needs, needs ? std::move(backward) : nullptr);
}

void Tape::accumulate(Var v, const Matrix& g) {
  Node& node = nodes_[v.id()];
  if (!node.requires_grad) return;
  if (g.rows() != node.value.rows() || g.cols() != node.value.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "gradient shape differs from value shape");
  }
  if (node.grad.size() == 0) {
    node.grad = g;
  } else {
    node.grad += g;
  }
}

void Tape::backward(Var loss) {
  const Node& target = nodes_[loss.id()];
  if (target.value.rows() != 1 || target.value.cols() != 1) {
    throw Error(ErrorCode::NonScalarLoss, "backward needs a 1x1 loss");
  }
  for (auto& node : nodes_) node.grad.resize(0, 0);
  nodes_[loss.id()].grad = Matrix::Ones(1, 1);
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (!node.backward || node.grad.size() == 0) continue;
    node.backward(*this, node.grad);
  }
}

Matrix Tape::grad(Var v) const {
  const Node& node = nodes_[v.id()];
  if (node.grad.size() == 0) return Matrix::Zero(node.value.rows(), node.value.cols());
  return node.grad;
}

}  // namespace dphg::nn
