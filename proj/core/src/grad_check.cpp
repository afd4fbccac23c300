#include "dphg/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dphg/rng.hpp"

namespace dphg::nn {

double relative_error(double analytic, double numeric) {
  if (analytic == 0.0 && numeric == 0.0) return 0.0;
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  return std::abs(analytic - numeric) / scale;
}

namespace {

double evaluate(const LossBuilder& loss, const ParamStore& params) {
  Tape tape;
  ParamBinding bound(tape, params);
  return loss(tape, bound).value()(0, 0);
}

}  // namespace

GradCheckResult grad_check(const LossBuilder& loss, ParamStore& params, const GradCheckOptions& options) {
  std::vector<Matrix> analytic;
  {
    Tape tape;
    ParamBinding bound(tape, params);
    tape.backward(loss(tape, bound));
    analytic = bound.gradients();
  }

  Rng rng(options.seed);
  GradCheckResult result;
  for (std::size_t p = 0; p < params.size(); ++p) {
    auto& entry = params.entries()[p];
    const auto total = static_cast<std::size_t>(entry.value.size());
    std::vector<Index> picks(total);
    std::iota(picks.begin(), picks.end(), Index{0});
    if (total > options.sample_limit) {
      rng.shuffle(picks);
      picks.resize(options.sample_limit);
      std::sort(picks.begin(), picks.end());
    }
    for (Index k : picks) {
      double& slot = entry.value.data()[k];
      const double saved = slot;
      slot = saved + options.eps;
      const double up = evaluate(loss, params);
      slot = saved - options.eps;
      const double down = evaluate(loss, params);
      slot = saved;
      const double numeric = (up - down) / (2.0 * options.eps);
      const double a = analytic[p].data()[k];
      const double err = relative_error(a, numeric);
      ++result.entries_checked;
      if (result.worst_entry < 0 || err > result.max_rel_error) {
        result.max_rel_error = err;
        result.worst_param = entry.name;
        result.worst_entry = k;
        result.worst_analytic = a;
        result.worst_numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace dphg::nn
