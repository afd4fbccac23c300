#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "dphg/params.hpp"

namespace dphg::nn {

// |a - f| / max(|a|, |f|, 1e-6); zero when both are zero.
double relative_error(double analytic, double numeric);

struct GradCheckOptions {
  double eps = 1e-5;
  // Parameters with more entries than this are checked on a seeded sample of
  // this many entries.
  std::size_t sample_limit = 200;
  std::uint64_t seed = 0;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  Index worst_entry = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t entries_checked = 0;
};

// Builds a scalar loss from bound parameters on a fresh tape. Must be
// deterministic (no dropout).
using LossBuilder = std::function<Var(Tape&, const ParamBinding&)>;

// Compares reverse-mode gradients of `loss` with central differences.
// `params` is perturbed in place and restored.
GradCheckResult grad_check(const LossBuilder& loss, ParamStore& params, const GradCheckOptions& options = {});

}  // namespace dphg::nn
