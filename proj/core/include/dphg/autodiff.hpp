#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <initializer_list>

#include "dphg/types.hpp"

namespace dphg::nn {

class Tape;

// Handle to a value recorded on a Tape. Cheap to copy; only valid while the
// owning tape is alive.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  Index rows() const { return value().rows(); }
  Index cols() const { return value().cols(); }
  Tape* tape() const { return tape_; }
  std::size_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

// Append-only record of a forward computation. Each recorded node keeps its
// value and a closure that pushes an upstream gradient to its inputs. Nodes are
// stored in a deque so references to earlier values stay valid while the
// forward pass grows the tape.
//
// A tape is single-use and not thread-safe; build one per forward pass.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, const Matrix& upstream)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Matrix value);
  Var parameter(Matrix value);

  // Records an op result. The closure is kept only if some input needs a
  // gradient.
  Var record(Matrix value, std::initializer_list<Var> inputs, BackwardFn backward);
  Var record(Matrix value, const std::vector<Var>& inputs, BackwardFn backward);

  // Reverse sweep from a 1x1 loss. Throws NonScalarLoss otherwise.
  void backward(Var loss);

  const Matrix& value(Var v) const { return nodes_[v.id()].value; }
  // Gradient of the last backward() target with respect to v; zeros if v did
  // not influence it.
  Matrix grad(Var v) const;
  bool requires_grad(Var v) const { return nodes_[v.id()].requires_grad; }

  void accumulate(Var v, const Matrix& g);

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    BackwardFn backward;
    bool requires_grad = false;
  };

  Var push(Matrix value, bool requires_grad, BackwardFn backward);

  std::deque<Node> nodes_;
};

inline const Matrix& Var::value() const { return tape_->value(*this); }

}  // namespace dphg::nn
