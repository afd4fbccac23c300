#include "dphg/ops.hpp"

#include <cmath>
#include <string>

#include "dphg/error.hpp"

namespace dphg::nn {

namespace {

[[noreturn]] void shape_error(const char* op, const Matrix& a, const Matrix& b) {
  throw Error(ErrorCode::ShapeMismatch, std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                                            std::to_string(a.cols()) + " vs " +
                                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

Tape& tape_of(Var a) { return *a.tape(); }

}  // namespace

Var matmul(Var a, Var b) {
  const Matrix& av = a.value();
  const Matrix& bv = b.value();
  if (av.cols() != bv.rows()) shape_error("matmul", av, bv);
  return tape_of(a).record(av * bv, {a, b}, [a, b](Tape& t, const Matrix& g) {
    if (t.requires_grad(a)) t.accumulate(a, g * t.value(b).transpose());
    if (t.requires_grad(b)) t.accumulate(b, t.value(a).transpose() * g);
  });
}

Var spmm(const SparseMatrix& s, Var x) {
  const Matrix& xv = x.value();
  if (s.cols() != xv.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "spmm: operator has " + std::to_string(s.cols()) +
                                              " columns, input has " + std::to_string(xv.rows()) + " rows");
  }
  const SparseMatrix* op = &s;
  return tape_of(x).record(s * xv, {x}, [op, x](Tape& t, const Matrix& g) {
    t.accumulate(x, Matrix(op->storage().transpose() * g));
  });
}

Var add(Var a, Var b) {
  const Matrix& av = a.value();
  const Matrix& bv = b.value();
  if (av.rows() == bv.rows() && av.cols() == bv.cols()) {
    return tape_of(a).record(av + bv, {a, b}, [a, b](Tape& t, const Matrix& g) {
      t.accumulate(a, g);
      t.accumulate(b, g);
    });
  }
  if (bv.rows() == 1 && bv.cols() == av.cols()) {
    Matrix out = av.rowwise() + bv.row(0);
    return tape_of(a).record(std::move(out), {a, b}, [a, b](Tape& t, const Matrix& g) {
      t.accumulate(a, g);
      t.accumulate(b, g.colwise().sum());
    });
  }
  shape_error("add", av, bv);
}

Var sub(Var a, Var b) {
  const Matrix& av = a.value();
  const Matrix& bv = b.value();
  if (av.rows() != bv.rows() || av.cols() != bv.cols()) shape_error("sub", av, bv);
  return tape_of(a).record(av - bv, {a, b}, [a, b](Tape& t, const Matrix& g) {
    t.accumulate(a, g);
    t.accumulate(b, -g);
  });
}

Var hadamard(Var a, Var b) {
  const Matrix& av = a.value();
  const Matrix& bv = b.value();
  if (av.rows() != bv.rows() || av.cols() != bv.cols()) shape_error("hadamard", av, bv);
  return tape_of(a).record(av.cwiseProduct(bv), {a, b}, [a, b](Tape& t, const Matrix& g) {
    if (t.requires_grad(a)) t.accumulate(a, g.cwiseProduct(t.value(b)));
    if (t.requires_grad(b)) t.accumulate(b, g.cwiseProduct(t.value(a)));
  });
}

Var scale(Var a, double s) {
  return tape_of(a).record(a.value() * s, {a}, [a, s](Tape& t, const Matrix& g) { t.accumulate(a, g * s); });
}

Var concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw Error(ErrorCode::ShapeMismatch, "concat_cols of nothing");
  const Index rows = parts.front().rows();
  Index cols = 0;
  for (const Var& p : parts) {
    if (p.rows() != rows) shape_error("concat_cols", parts.front().value(), p.value());
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::vector<Index> offsets;
  Index at = 0;
  for (const Var& p : parts) {
    offsets.push_back(at);
    out.middleCols(at, p.cols()) = p.value();
    at += p.cols();
  }
  return tape_of(parts.front()).record(std::move(out), parts, [parts, offsets](Tape& t, const Matrix& g) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      t.accumulate(parts[i], g.middleCols(offsets[i], parts[i].cols()));
    }
  });
}

Var slice_cols(Var a, Index start, Index count) {
  const Matrix& av = a.value();
  if (start < 0 || count < 0 || start + count > av.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "slice_cols out of range");
  }
  Matrix out = av.middleCols(start, count);
  return tape_of(a).record(std::move(out), {a}, [a, start, count](Tape& t, const Matrix& g) {
    Matrix full = Matrix::Zero(t.value(a).rows(), t.value(a).cols());
    full.middleCols(start, count) = g;
    t.accumulate(a, full);
  });
}

Var slice_rows(Var a, Index start, Index count) {
  const Matrix& av = a.value();
  if (start < 0 || count < 0 || start + count > av.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "slice_rows out of range");
  }
  Matrix out = av.middleRows(start, count);
  return tape_of(a).record(std::move(out), {a}, [a, start, count](Tape& t, const Matrix& g) {
    Matrix full = Matrix::Zero(t.value(a).rows(), t.value(a).cols());
    full.middleRows(start, count) = g;
    t.accumulate(a, full);
  });
}

Var relu(Var a) {
  Matrix out = a.value().cwiseMax(0.0);
  return tape_of(a).record(std::move(out), {a}, [a](Tape& t, const Matrix& g) {
    const Matrix& x = t.value(a);
    t.accumulate(a, g.cwiseProduct((x.array() > 0.0).cast<double>().matrix()));
  });
}

Var leaky_relu(Var a, double negative_slope) {
  const Matrix& x = a.value();
  Matrix out = (x.array() > 0.0).select(x, x * negative_slope);
  return tape_of(a).record(std::move(out), {a}, [a, negative_slope](Tape& t, const Matrix& g) {
    const Matrix& xv = t.value(a);
    Matrix slope = (xv.array() > 0.0).select(Matrix::Ones(xv.rows(), xv.cols()),
                                              Matrix::Constant(xv.rows(), xv.cols(), negative_slope));
    t.accumulate(a, g.cwiseProduct(slope));
  });
}

Var sigmoid(Var a) {
  Matrix out = a.value().unaryExpr([](double x) {
    // Split by sign so exp never overflows.
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
  });
  Var result = tape_of(a).record(out, {a}, [a, out](Tape& t, const Matrix& g) {
    t.accumulate(a, g.cwiseProduct(out.cwiseProduct((1.0 - out.array()).matrix())));
  });
  return result;
}

Var softmax_rows(Var a) {
  const Matrix& x = a.value();
  Matrix out(x.rows(), x.cols());
  for (Index r = 0; r < x.rows(); ++r) {
    const double mx = x.row(r).maxCoeff();
    out.row(r) = (x.row(r).array() - mx).exp().matrix();
    out.row(r) /= out.row(r).sum();
  }
  return tape_of(a).record(out, {a}, [a, out](Tape& t, const Matrix& g) {
    Matrix dx(out.rows(), out.cols());
    for (Index r = 0; r < out.rows(); ++r) {
      const double dot = g.row(r).dot(out.row(r));
      dx.row(r) = out.row(r).cwiseProduct((g.row(r).array() - dot).matrix());
    }
    t.accumulate(a, dx);
  });
}

Var select_rows(Var a, std::span<const Index> rows) {
  const Matrix& x = a.value();
  std::vector<Index> idx(rows.begin(), rows.end());
  Matrix out(static_cast<Index>(idx.size()), x.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= x.rows()) throw Error(ErrorCode::ShapeMismatch, "select_rows index out of range");
    out.row(static_cast<Index>(i)) = x.row(idx[i]);
  }
  return tape_of(a).record(std::move(out), {a}, [a, idx = std::move(idx)](Tape& t, const Matrix& g) {
    Matrix dx = Matrix::Zero(t.value(a).rows(), t.value(a).cols());
    for (std::size_t i = 0; i < idx.size(); ++i) dx.row(idx[i]) += g.row(static_cast<Index>(i));
    t.accumulate(a, dx);
  });
}

Var segment_softmax(Var scores, std::span<const Index> segments, Index num_segments) {
  const Matrix& s = scores.value();
  if (s.cols() != 1 || s.rows() != static_cast<Index>(segments.size())) {
    throw Error(ErrorCode::ShapeMismatch, "segment_softmax expects E x 1 scores with E segment ids");
  }
  std::vector<Index> seg(segments.begin(), segments.end());
  Vector mx = Vector::Constant(num_segments, -std::numeric_limits<double>::infinity());
  for (std::size_t e = 0; e < seg.size(); ++e) {
    if (seg[e] < 0 || seg[e] >= num_segments) throw Error(ErrorCode::ShapeMismatch, "segment id out of range");
    mx[seg[e]] = std::max(mx[seg[e]], s(static_cast<Index>(e), 0));
  }
  Matrix out(s.rows(), 1);
  Vector denom = Vector::Zero(num_segments);
  for (std::size_t e = 0; e < seg.size(); ++e) {
    out(static_cast<Index>(e), 0) = std::exp(s(static_cast<Index>(e), 0) - mx[seg[e]]);
    denom[seg[e]] += out(static_cast<Index>(e), 0);
  }
  for (std::size_t e = 0; e < seg.size(); ++e) out(static_cast<Index>(e), 0) /= denom[seg[e]];
  return tape_of(scores).record(out, {scores}, [scores, out, seg = std::move(seg), num_segments](Tape& t, const Matrix& g) {
    Vector dot = Vector::Zero(num_segments);
    for (std::size_t e = 0; e < seg.size(); ++e) dot[seg[e]] += g(static_cast<Index>(e), 0) * out(static_cast<Index>(e), 0);
    Matrix dx(out.rows(), 1);
    for (std::size_t e = 0; e < seg.size(); ++e) {
      const auto i = static_cast<Index>(e);
      dx(i, 0) = out(i, 0) * (g(i, 0) - dot[seg[e]]);
    }
    t.accumulate(scores, dx);
  });
}

Var scale_rows(Var a, Var weights) {
  const Matrix& x = a.value();
  const Matrix& w = weights.value();
  if (w.cols() != 1 || w.rows() != x.rows()) shape_error("scale_rows", x, w);
  Matrix out = w.col(0).asDiagonal() * x;
  return tape_of(a).record(std::move(out), {a, weights}, [a, weights](Tape& t, const Matrix& g) {
    const Matrix& xv = t.value(a);
    const Matrix& wv = t.value(weights);
    if (t.requires_grad(a)) t.accumulate(a, wv.col(0).asDiagonal() * g);
    if (t.requires_grad(weights)) t.accumulate(weights, g.cwiseProduct(xv).rowwise().sum());
  });
}

Var segment_sum(Var a, std::span<const Index> segments, Index num_segments) {
  const Matrix& x = a.value();
  if (x.rows() != static_cast<Index>(segments.size())) {
    throw Error(ErrorCode::ShapeMismatch, "segment_sum expects one segment id per row");
  }
  std::vector<Index> seg(segments.begin(), segments.end());
  Matrix out = Matrix::Zero(num_segments, x.cols());
  for (std::size_t e = 0; e < seg.size(); ++e) {
    if (seg[e] < 0 || seg[e] >= num_segments) throw Error(ErrorCode::ShapeMismatch, "segment id out of range");
    out.row(seg[e]) += x.row(static_cast<Index>(e));
  }
  return tape_of(a).record(std::move(out), {a}, [a, seg = std::move(seg)](Tape& t, const Matrix& g) {
    Matrix dx(static_cast<Index>(seg.size()), g.cols());
    for (std::size_t e = 0; e < seg.size(); ++e) dx.row(static_cast<Index>(e)) = g.row(seg[e]);
    t.accumulate(a, dx);
  });
}

Var sum(Var a) {
  Matrix out(1, 1);
  out(0, 0) = a.value().sum();
  return tape_of(a).record(std::move(out), {a}, [a](Tape& t, const Matrix& g) {
    t.accumulate(a, Matrix::Constant(t.value(a).rows(), t.value(a).cols(), g(0, 0)));
  });
}

Var cross_entropy(Var logits, std::span<const int> labels, const Mask& mask) {
  const Matrix& z = logits.value();
  if (static_cast<Index>(labels.size()) != z.rows() || static_cast<Index>(mask.size()) != z.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "cross_entropy: labels and mask need one entry per row");
  }
  std::vector<Index> rows;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) rows.push_back(static_cast<Index>(i));
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyMask, "cross_entropy over an empty mask");
  std::vector<int> y(labels.begin(), labels.end());

  Matrix probs(static_cast<Index>(rows.size()), z.cols());
  double total = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Index r = rows[k];
    const int label = y[static_cast<std::size_t>(r)];
    if (label < 0 || label >= z.cols()) throw Error(ErrorCode::ShapeMismatch, "label outside logit columns");
    const double mx = z.row(r).maxCoeff();
    const auto shifted = (z.row(r).array() - mx).eval();
    const double lse = std::log(shifted.exp().sum());
    total += lse - shifted(label);
    probs.row(static_cast<Index>(k)) = (shifted - lse).exp().matrix();
  }
  const double count = static_cast<double>(rows.size());
  Matrix out(1, 1);
  out(0, 0) = total / count;
  return tape_of(logits).record(
      std::move(out), {logits},
      [logits, rows = std::move(rows), y = std::move(y), probs, count](Tape& t, const Matrix& g) {
        Matrix dz = Matrix::Zero(t.value(logits).rows(), t.value(logits).cols());
        for (std::size_t k = 0; k < rows.size(); ++k) {
          const Index r = rows[k];
          dz.row(r) = probs.row(static_cast<Index>(k));
          dz(r, y[static_cast<std::size_t>(r)]) -= 1.0;
        }
        t.accumulate(logits, dz * (g(0, 0) / count));
      });
}

Var dropout(Var a, double p, const DropoutContext& ctx) {
  if (!ctx.training || p <= 0.0) return a;
  if (ctx.rng == nullptr) throw Error(ErrorCode::InvalidConfig, "training-mode dropout needs an rng");
  const Matrix& x = a.value();
  Matrix keep(x.rows(), x.cols());
  const double scale_by = p >= 1.0 ? 0.0 : 1.0 / (1.0 - p);
  for (Index c = 0; c < x.cols(); ++c) {
    for (Index r = 0; r < x.rows(); ++r) keep(r, c) = ctx.rng->bernoulli(p) ? 0.0 : scale_by;
  }
  return tape_of(a).record(x.cwiseProduct(keep), {a},
                           [a, keep](Tape& t, const Matrix& g) { t.accumulate(a, g.cwiseProduct(keep)); });
}

}  // namespace dphg::nn
