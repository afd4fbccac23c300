#pragma once

#include <span>
#include <vector>

#include "dphg/types.hpp"

namespace dphg {

struct Metrics {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;
  std::size_t support = 0;  // number of masked rows
};

// Macro F1 averages over all num_classes classes; a class with no true and no
// predicted members contributes 0. Throws EmptyMask.
Metrics metrics(std::span<const int> preds, std::span<const int> labels, const Mask& mask, int num_classes);

// Row-wise argmax; ties go to the lowest class index.
std::vector<int> argmax_rows(const Matrix& logits);

}  // namespace dphg
