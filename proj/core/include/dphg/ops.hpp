#pragma once

#include <span>
#include <vector>

#include "dphg/autodiff.hpp"
#include "dphg/rng.hpp"
#include "dphg/sparse.hpp"

namespace dphg::nn {

// Differentiable dense ops. All of them throw ShapeMismatch on incompatible
// operands. Index arrays are copied into the tape; sparse operators passed to
// spmm are referenced and must outlive the backward pass.

Var matmul(Var a, Var b);
Var spmm(const SparseMatrix& s, Var x);
// Elementwise a + b, or row-broadcast when b is 1 x a.cols() (bias).
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var hadamard(Var a, Var b);
Var scale(Var a, double s);
Var concat_cols(const std::vector<Var>& parts);
Var slice_cols(Var a, Index start, Index count);
Var slice_rows(Var a, Index start, Index count);

Var relu(Var a);
Var leaky_relu(Var a, double negative_slope = 0.2);
Var sigmoid(Var a);
Var softmax_rows(Var a);

// Gathers rows (repeats allowed); the backward pass scatter-adds.
Var select_rows(Var a, std::span<const Index> rows);

// scores is E x 1; softmax taken independently within each segment id.
Var segment_softmax(Var scores, std::span<const Index> segments, Index num_segments);
// Row e of `a` multiplied by weights(e, 0).
Var scale_rows(Var a, Var weights);
// Output row s is the sum of the rows of `a` whose segment id is s.
Var segment_sum(Var a, std::span<const Index> segments, Index num_segments);

Var sum(Var a);

// Mean over rows with mask[i] set of -log softmax(logits_i)[labels[i]].
// Throws EmptyMask when no row is selected.
Var cross_entropy(Var logits, std::span<const int> labels, const Mask& mask);

struct DropoutContext {
  bool training = false;
  Rng* rng = nullptr;
};

// Inverted dropout: survivors are scaled by 1/(1-p). Identity outside training
// or when p == 0.
Var dropout(Var a, double p, const DropoutContext& ctx);

}  // namespace dphg::nn
