#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hpcause {

using Value = std::int32_t;

// Index of a variable in its Signature, in declaration order.
struct VarId {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(VarId, VarId) = default;
};

enum class VarKind { kExogenous, kEndogenous };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kEndogenous;
  std::vector<Value> range;  // nonempty, duplicate-free, declaration order

  bool endogenous() const { return kind == VarKind::kEndogenous; }

  friend bool operator==(const Variable&, const Variable&) = default;
};

// One variable set to one value.
struct Setting {
  VarId var;
  Value value = 0;

  friend bool operator==(const Setting&, const Setting&) = default;
};

// A partial assignment, kept sorted by variable with no repeated variable.
using Assignment = std::vector<Setting>;

// Sorts by variable and rejects repeats. Throws QueryError on a repeat.
Assignment normalized(Assignment a);

// The ordered sets of exogenous and endogenous variables together with their
// finite ranges.
class Signature {
 public:
  // Throws ModelError on a duplicate name, an empty range or a repeated value.
  VarId add(std::string name, VarKind kind, std::vector<Value> range);
  VarId add_exogenous(std::string name, std::vector<Value> range) {
    return add(std::move(name), VarKind::kExogenous, std::move(range));
  }
  VarId add_endogenous(std::string name, std::vector<Value> range) {
    return add(std::move(name), VarKind::kEndogenous, std::move(range));
  }

  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](VarId id) const { return vars_[id.index]; }
  const std::string& name(VarId id) const { return vars_[id.index].name; }
  const std::vector<Value>& range(VarId id) const { return vars_[id.index].range; }

  std::optional<VarId> find(std::string_view name) const;
  // Throws QueryError for unknown names.
  VarId at(std::string_view name) const;

  std::span<const VarId> exogenous() const { return exogenous_; }
  std::span<const VarId> endogenous() const { return endogenous_; }

  bool is_endogenous(VarId id) const { return vars_[id.index].endogenous(); }
  bool in_range(VarId id, Value v) const;
  // Position of `v` within range(id), or -1.
  int range_index(VarId id, Value v) const;
  // Every variable has exactly two values.
  bool is_binary() const;

  // Same variables, kinds and ranges in the same order.
  friend bool operator==(const Signature& a, const Signature& b) { return a.vars_ == b.vars_; }

 private:
  std::vector<Variable> vars_;
  std::vector<VarId> exogenous_;
  std::vector<VarId> endogenous_;
  std::unordered_map<std::string, VarId> by_name_;
};

std::string to_string(const Signature& sig, const Assignment& a);

}  // namespace hpcause
