#include "dphg/params.hpp"

#include <cmath>

#include "dphg/error.hpp"

namespace dphg::nn {

const char* to_string(ParamGroup group) {
  switch (group) {
    case ParamGroup::Gnn: return "gnn";
    case ParamGroup::Taa: return "taa";
    case ParamGroup::Sib: return "sib";
    case ParamGroup::Dff: return "dff";
  }
  return "unknown";
}

Matrix& ParamStore::add(std::string name, Matrix value, ParamGroup group) {
  if (contains(name)) throw Error(ErrorCode::InvalidConfig, "duplicate parameter " + name);
  entries_.push_back({std::move(name), std::move(value), group});
  return entries_.back().value;
}

bool ParamStore::contains(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return true;
  }
  return false;
}

std::size_t ParamStore::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown parameter " + std::string(name));
}

Index ParamStore::num_scalars() const {
  Index total = 0;
  for (const auto& e : entries_) total += e.value.size();
  return total;
}

ParamBinding::ParamBinding(Tape& tape, const ParamStore& store) : tape_(&tape), store_(&store) {
  vars_.reserve(store.size());
  for (const auto& e : store.entries()) vars_.push_back(tape.parameter(e.value));
}

std::vector<Matrix> ParamBinding::gradients() const {
  std::vector<Matrix> out;
  out.reserve(vars_.size());
  for (const Var& v : vars_) out.push_back(tape_->grad(v));
  return out;
}

Matrix glorot_uniform(Index fan_in, Index fan_out, Rng& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Matrix w(fan_in, fan_out);
  for (Index r = 0; r < fan_in; ++r) {
    for (Index c = 0; c < fan_out; ++c) w(r, c) = rng.uniform(-a, a);
  }
  return w;
}

}  // namespace dphg::nn
