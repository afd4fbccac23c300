#pragma once

#include <array>
#include <vector>

#include "dphg/params.hpp"

namespace dphg::nn {

struct AdamSettings {
  double lr = 0.01;
  double weight_decay = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction and decoupled weight decay (p -= lr * wd * p),
// configured per parameter group.
class Adam {
 public:
  Adam(const ParamStore& params, std::array<AdamSettings, 4> by_group);
  Adam(const ParamStore& params, const AdamSettings& all);

  // grads must match the store entry-for-entry in shape; ShapeMismatch otherwise.
  void step(ParamStore& params, const std::vector<Matrix>& grads);

  long steps() const { return step_; }
  const AdamSettings& settings(ParamGroup g) const { return by_group_[static_cast<std::size_t>(g)]; }
  const std::vector<Matrix>& first_moments() const { return m_; }
  const std::vector<Matrix>& second_moments() const { return v_; }

 private:
  std::array<AdamSettings, 4> by_group_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  long step_ = 0;
};

}  // namespace dphg::nn
