#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dphg/autodiff.hpp"
#include "dphg/rng.hpp"
#include "dphg/types.hpp"

namespace dphg::nn {

// Module a parameter belongs to; each group gets its own optimizer settings.
enum class ParamGroup { Gnn, Taa, Sib, Dff };

const char* to_string(ParamGroup group);

// Named trainable matrices in insertion order.
class ParamStore {
 public:
  struct Entry {
    std::string name;
    Matrix value;
    ParamGroup group;
  };

  // Throws InvalidConfig on a duplicate name.
  Matrix& add(std::string name, Matrix value, ParamGroup group);

  bool contains(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws InvalidConfig if absent
  Matrix& get(std::string_view name) { return entries_[index_of(name)].value; }
  const Matrix& get(std::string_view name) const { return entries_[index_of(name)].value; }

  std::vector<Entry>& entries() { return entries_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  Index num_scalars() const;

 private:
  std::vector<Entry> entries_;
};

// Leaf variables for every stored parameter on one tape.
class ParamBinding {
 public:
  ParamBinding(Tape& tape, const ParamStore& store);

  Var operator[](std::string_view name) const { return vars_[store_->index_of(name)]; }
  Var at(std::size_t i) const { return vars_[i]; }
  Tape& tape() const { return *tape_; }

  // Gradients in store order; call after tape.backward().
  std::vector<Matrix> gradients() const;

 private:
  Tape* tape_;
  const ParamStore* store_;
  std::vector<Var> vars_;
};

// fan_in x fan_out matrix drawn from U(-a, a), a = sqrt(6 / (fan_in + fan_out)).
Matrix glorot_uniform(Index fan_in, Index fan_out, Rng& rng);

}  // namespace dphg::nn
