#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlayers/theory.hpp"
#include "mlayers/value.hpp"

namespace mlayers {

/// Interpretation of one operation: parameter (if any) and argument tuple.
using OpFn = std::function<Value(const std::optional<Rational>& param, std::span<const Value> args)>;

/// Σ-algebra on an explicitly listed carrier.
///
/// Operations are functions rather than tables so that lifted and free
/// algebras, whose operations may leave a truncated carrier, share the type.
class FiniteAlgebra {
public:
  FiniteAlgebra() = default;
  FiniteAlgebra(std::vector<Value> carrier, std::map<std::string, OpFn> ops)
      : carrier_(std::move(carrier)), ops_(std::move(ops)) {}

  [[nodiscard]] const std::vector<Value>& carrier() const noexcept { return carrier_; }
  [[nodiscard]] bool interprets(const std::string& op) const { return ops_.count(op) > 0; }
  /// Throws SignatureError for an uninterpreted operation.
  [[nodiscard]] Value apply(const std::string& op, const std::optional<Rational>& param,
                            std::span<const Value> args) const;

  void set_op(const std::string& op, OpFn fn) { ops_[op] = std::move(fn); }

private:
  std::vector<Value> carrier_;
  std::map<std::string, OpFn> ops_;
};

/// Algebra whose operations are finite tables over carrier indices.
///
/// tables[op] lists results in row-major order of the argument indices.
FiniteAlgebra table_algebra(const std::vector<Value>& carrier, const Signature& sig,
                            const std::map<std::string, std::vector<std::size_t>>& tables);

using ParamEnv = std::map<std::string, Rational>;

/// Folds interpretations bottom-up, consuming the argument tuple left to right.
/// Throws SignatureError when the tuple length differs from |args(t)|.
Value evaluate(const Term& t, const FiniteAlgebra& a, std::span<const Value> arg_tuple, const ParamEnv& params = {});

/// evaluate(t, a, prepare(valuation)).
Value interpret(const Term& t, const FiniteAlgebra& a, std::span<const Value> valuation, const ParamEnv& params = {});

/// Grid of parameter values used when checking parameterized equations.
std::vector<Rational> default_param_grid();

struct HoldsWitness {
  std::vector<Value> valuation;
  ParamEnv params;
  Value lhs;
  Value rhs;
};

struct HoldsResult {
  bool holds = true;
  std::optional<HoldsWitness> witness;
  std::size_t valuations_checked = 0;
};

/// Every parameter assignment of the equation's parameter variables drawn
/// from the grid, skipping assignments where some parameter expression
/// divides by zero or leaves [0,1].
std::vector<ParamEnv> param_instances(const Equation& e, std::span<const Rational> grid);

/// Exhaustive over carrier^|V| and the parameter instances.
HoldsResult holds(const FiniteAlgebra& a, const Equation& e, std::span<const Rational> grid = {});

}  // namespace mlayers
