#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hpcause/expression.hpp"
#include "hpcause/signature.hpp"

namespace hpcause {

// A recursive structural causal model: one equation (or, after an
// intervention, one fixed value) per endogenous variable.
//
// Immutable once built. Copies share the signature.
class CausalModel {
 public:
  // `equations` is indexed by VarId; entries for exogenous variables must be
  // empty. Structural problems (cycles, missing equations, ...) do not throw
  // here; they are reported by validate_model and make solve() throw.
  CausalModel(std::shared_ptr<const Signature> sig, std::vector<std::optional<Expression>> equations);

  const Signature& signature() const { return *sig_; }
  const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }

  const std::optional<Expression>& equation(VarId id) const { return equations_[id.index]; }
  const std::optional<Value>& fixed_value(VarId id) const { return fixed_[id.index]; }

  // Endogenous variables in a deterministic topological order of the
  // dependency graph, or empty if the graph has a cycle.
  const std::vector<VarId>& evaluation_order() const { return order_; }
  bool acyclic() const { return acyclic_; }

 private:
  friend CausalModel intervene(const CausalModel& model, const Assignment& assignment);
  void compute_order();

  std::shared_ptr<const Signature> sig_;
  std::vector<std::optional<Expression>> equations_;
  std::vector<std::optional<Value>> fixed_;
  std::vector<VarId> order_;
  bool acyclic_ = false;
};

// A total assignment to the exogenous variables.
class Context {
 public:
  // Throws QueryError unless `values` covers every exogenous variable exactly
  // once with an in-range value and mentions nothing else.
  Context(const Signature& sig, Assignment values);

  const Assignment& values() const { return values_; }

  friend bool operator==(const Context&, const Context&) = default;

 private:
  Assignment values_;
};

// Values of every variable (indexed by VarId) in the unique solution.
class TotalState {
 public:
  explicit TotalState(std::vector<Value> values) : values_(std::move(values)) {}

  Value operator[](VarId id) const { return values_[id.index]; }
  std::span<const Value> values() const { return values_; }

  friend bool operator==(const TotalState&, const TotalState&) = default;

 private:
  std::vector<Value> values_;
};

enum class ViolationKind {
  kCycle,
  kSelfReference,
  kMissingEquation,
  kRangeViolation,
  kEquationOnExogenous,
  kRangeCheckSkipped,  // too many assignments to sweep; not an error
};

struct Violation {
  ViolationKind kind;
  std::vector<VarId> variables;  // cycle members, or the equation target first
  Assignment witness;            // range violation: offending assignment
  Value produced = 0;            // range violation: the out-of-range value
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool binary = false;

  // True iff no violation other than kRangeCheckSkipped.
  bool valid() const;
};

// Assignments swept per equation before giving up on the range check.
inline constexpr std::uint64_t kRangeSweepLimit = std::uint64_t{1} << 20;

ValidationReport validate_model(const CausalModel& model);

// Throws ModelError if the model has a cycle, a missing equation, or an
// equation produces a value outside its target's range for this context.
TotalState solve(const CausalModel& model, const Context& context);

// M_{X<-x}. Repeated interventions on a variable keep the last value.
// Throws QueryError for exogenous or out-of-range settings.
CausalModel intervene(const CausalModel& model, const Assignment& assignment);

struct DependencyGraph {
  std::vector<std::pair<VarId, VarId>> edges;  // (from, to), sorted
  std::vector<VarId> order;                    // topological
};

// Edges X -> Y between endogenous variables whenever Y's equation mentions X.
// Throws ModelError on a cycle.
DependencyGraph dependency_graph(const CausalModel& model);

}  // namespace hpcause
