#include "dphg/optim.hpp"

#include <cmath>

#include "dphg/error.hpp"

namespace dphg::nn {

Adam::Adam(const ParamStore& params, std::array<AdamSettings, 4> by_group) : by_group_(by_group) {
  for (const auto& e : params.entries()) {
    m_.push_back(Matrix::Zero(e.value.rows(), e.value.cols()));
    v_.push_back(Matrix::Zero(e.value.rows(), e.value.cols()));
  }
}

Adam::Adam(const ParamStore& params, const AdamSettings& all) : Adam(params, {all, all, all, all}) {}

void Adam::step(ParamStore& params, const std::vector<Matrix>& grads) {
  auto& entries = params.entries();
  if (grads.size() != entries.size() || m_.size() != entries.size()) {
    throw Error(ErrorCode::ShapeMismatch, "adam: gradient count does not match parameters");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (grads[i].rows() != entries[i].value.rows() || grads[i].cols() != entries[i].value.cols()) {
      throw Error(ErrorCode::ShapeMismatch, "adam: gradient shape mismatch for " + entries[i].name);
    }
  }
  ++step_;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const AdamSettings& s = settings(entries[i].group);
    const double c1 = 1.0 - std::pow(s.beta1, static_cast<double>(step_));
    const double c2 = 1.0 - std::pow(s.beta2, static_cast<double>(step_));
    Matrix& p = entries[i].value;
    m_[i] = s.beta1 * m_[i] + (1.0 - s.beta1) * grads[i];
    v_[i] = s.beta2 * v_[i] + (1.0 - s.beta2) * grads[i].cwiseProduct(grads[i]);
    const auto m_hat = (m_[i] / c1).array();
    const auto v_hat = (v_[i] / c2).array();
    p.array() -= s.lr * (m_hat / (v_hat.sqrt() + s.eps)) + s.lr * s.weight_decay * p.array();
  }
}

}  // namespace dphg::nn
