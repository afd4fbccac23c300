#include "dphg/metrics.hpp"

#include "dphg/error.hpp"

namespace dphg {

Metrics metrics(std::span<const int> preds, std::span<const int> labels, const Mask& mask, int num_classes) {
  if (preds.size() != labels.size() || mask.size() != labels.size()) {
    throw Error(ErrorCode::ShapeMismatch, "metrics: preds, labels and mask must have equal length");
  }
  const auto c = static_cast<std::size_t>(num_classes);
  std::vector<double> tp(c, 0.0), fp(c, 0.0), fn(c, 0.0);
  Metrics out;
  double correct = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!mask[i]) continue;
    const int p = preds[i];
    const int y = labels[i];
    if (p < 0 || p >= num_classes || y < 0 || y >= num_classes) {
      throw Error(ErrorCode::ShapeMismatch, "metrics: class id out of range");
    }
    ++out.support;
    if (p == y) {
      correct += 1.0;
      tp[static_cast<std::size_t>(y)] += 1.0;
    } else {
      fp[static_cast<std::size_t>(p)] += 1.0;
      fn[static_cast<std::size_t>(y)] += 1.0;
    }
  }
  if (out.support == 0) throw Error(ErrorCode::EmptyMask, "metrics over an empty mask");

  double macro = 0.0, tp_all = 0.0, fp_all = 0.0, fn_all = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    const double denom = 2.0 * tp[k] + fp[k] + fn[k];
    macro += denom > 0.0 ? 2.0 * tp[k] / denom : 0.0;
    tp_all += tp[k];
    fp_all += fp[k];
    fn_all += fn[k];
  }
  out.accuracy = correct / static_cast<double>(out.support);
  out.macro_f1 = macro / static_cast<double>(c);
  out.micro_f1 = 2.0 * tp_all / (2.0 * tp_all + fp_all + fn_all);
  return out;
}

std::vector<int> argmax_rows(const Matrix& logits) {
  std::vector<int> out(static_cast<std::size_t>(logits.rows()), 0);
  for (Index r = 0; r < logits.rows(); ++r) {
    int best = 0;
    for (Index k = 1; k < logits.cols(); ++k) {
      if (logits(r, k) > logits(r, best)) best = static_cast<int>(k);
    }
    out[static_cast<std::size_t>(r)] = best;
  }
  return out;
}

}  // namespace dphg
