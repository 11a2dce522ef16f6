#include "hpcause/signature.hpp"

#include <algorithm>

#include "hpcause/error.hpp"

namespace hpcause {

ParseError::ParseError(const std::string& message, std::size_t offset)
    : Error("parse error at offset " + std::to_string(offset) + ": " + message), detail_(message), offset_(offset) {}

ParseError ParseError::shifted(std::size_t base) const { return ParseError(detail_, offset_ + base); }

BudgetExceeded::BudgetExceeded(std::uint64_t limit)
    : Error("search budget of " + std::to_string(limit) + " solver calls exceeded"), limit_(limit) {}

Assignment normalized(Assignment a) {
  std::stable_sort(a.begin(), a.end(), [](const Setting& x, const Setting& y) { return x.var < y.var; });
  auto dup = std::adjacent_find(a.begin(), a.end(), [](const Setting& x, const Setting& y) { return x.var == y.var; });
  if (dup != a.end()) throw QueryError("variable assigned more than once");
  return a;
}

VarId Signature::add(std::string name, VarKind kind, std::vector<Value> range) {
  if (name.empty()) throw ModelError("empty variable name");
  if (by_name_.count(name)) throw ModelError("duplicate variable '" + name + "'");
  if (range.empty()) throw ModelError("variable '" + name + "' has an empty range");
  for (std::size_t i = 0; i < range.size(); ++i)
    for (std::size_t j = i + 1; j < range.size(); ++j)
      if (range[i] == range[j]) throw ModelError("variable '" + name + "' repeats value " + std::to_string(range[i]));

  VarId id{static_cast<std::uint32_t>(vars_.size())};
  by_name_.emplace(name, id);
  (kind == VarKind::kExogenous ? exogenous_ : endogenous_).push_back(id);
  vars_.push_back(Variable{std::move(name), kind, std::move(range)});
  return id;
}

std::optional<VarId> Signature::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

VarId Signature::at(std::string_view name) const {
  auto id = find(name);
  if (!id) throw QueryError("unknown variable '" + std::string(name) + "'");
  return *id;
}

int Signature::range_index(VarId id, Value v) const {
  const auto& r = vars_[id.index].range;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] == v) return static_cast<int>(i);
  return -1;
}

bool Signature::in_range(VarId id, Value v) const { return range_index(id, v) >= 0; }

bool Signature::is_binary() const {
  return std::all_of(vars_.begin(), vars_.end(), [](const Variable& v) { return v.range.size() == 2; });
}

std::string to_string(const Signature& sig, const Assignment& a) {
  std::string out;
  for (const auto& s : a) {
    if (!out.empty()) out += ", ";
    out += sig.name(s.var) + "=" + std::to_string(s.value);
  }
  return out;
}

}  // namespace hpcause
