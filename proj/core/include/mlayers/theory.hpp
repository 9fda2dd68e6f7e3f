#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlayers/errors.hpp"
#include "mlayers/rational.hpp"

namespace mlayers {

struct OpSymbol {
  std::string name;
  std::size_t arity = 0;
  bool parameterized = false;  // carries one rational in [0,1], e.g. convex choice

  friend bool operator==(const OpSymbol&, const OpSymbol&) = default;
};

class Signature {
public:
  Signature() = default;
  explicit Signature(std::vector<OpSymbol> ops);

  /// Throws SignatureError on a duplicate name.
  void add(OpSymbol op);
  [[nodiscard]] const OpSymbol* find(std::string_view name) const noexcept;
  [[nodiscard]] const OpSymbol& at(std::string_view name) const;
  [[nodiscard]] const std::vector<OpSymbol>& ops() const noexcept { return ops_; }
  [[nodiscard]] bool empty() const noexcept { return ops_.empty(); }
  /// Union; shared names must agree on arity and parameter flag.
  [[nodiscard]] Signature merged(const Signature& other) const;

  friend bool operator==(const Signature&, const Signature&) = default;

private:
  std::vector<OpSymbol> ops_;
};

/// Arithmetic over rational parameters, e.g. λ/(λ+(1-λ)*τ).
class ParamExpr {
public:
  enum class Op { Const, Var, Add, Sub, Mul, Div, Neg };

  static ParamExpr constant(Rational r);
  static ParamExpr var(std::string name);
  static ParamExpr binary(Op op, ParamExpr l, ParamExpr r);
  static ParamExpr negate(ParamExpr e);

  [[nodiscard]] Op op() const noexcept;
  [[nodiscard]] bool is_constant() const noexcept { return op() == Op::Const; }
  [[nodiscard]] const Rational& value() const;
  [[nodiscard]] const std::string& name() const;

  /// nullopt when a denominator evaluates to zero. Throws SignatureError on an unbound variable.
  [[nodiscard]] std::optional<Rational> eval(const std::map<std::string, Rational>& env) const;
  /// Free variables in first-occurrence order.
  void collect_vars(std::vector<std::string>& out) const;
  [[nodiscard]] ParamExpr renamed(const std::map<std::string, std::string>& names) const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const ParamExpr& a, const ParamExpr& b);

private:
  struct Node;
  explicit ParamExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Σ-term over variables indexed into an equation's context.
class Term {
public:
  static Term var(std::size_t index);
  static Term app(std::string op, std::vector<Term> args, std::optional<ParamExpr> param = std::nullopt);
  static Term constant(std::string op) { return app(std::move(op), {}); }

  [[nodiscard]] bool is_var() const noexcept;
  [[nodiscard]] std::size_t var_index() const;
  [[nodiscard]] const std::string& op() const;
  [[nodiscard]] const std::optional<ParamExpr>& param() const;
  [[nodiscard]] std::span<const Term> args() const;
  [[nodiscard]] std::size_t depth() const noexcept;
  [[nodiscard]] std::size_t size() const noexcept;

  /// Replaces variable i by map[i].
  [[nodiscard]] Term substitute(std::span<const Term> map) const;
  [[nodiscard]] Term renamed(std::span<const std::size_t> var_map) const;
  [[nodiscard]] Term rename_params(const std::map<std::string, std::string>& names) const;

  friend bool operator==(const Term& a, const Term& b);

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Equation {
  std::vector<std::string> context;  // variable names, indexed by Term::var
  Term lhs;
  Term rhs;

  /// Parameter variables occurring on either side, first-occurrence order.
  [[nodiscard]] std::vector<std::string> param_vars() const;
};

struct Theory {
  Signature signature;
  std::vector<Equation> equations;
};

// ---------------------------------------------------------------------------
// Variable analysis

/// Distinct variables in first-occurrence order.
std::vector<std::size_t> vars(const Term& t);
/// Variable occurrences in left-to-right order.
std::vector<std::size_t> args(const Term& t);
/// Projection indices (0-based) picking the argument tuple of t out of a
/// |V|-tuple. Throws SignatureError if t uses a variable outside V.
std::vector<std::size_t> prepare_indices(const Term& t, std::size_t context_size);

enum class SyntacticClass { Linear, Balanced, AffineSafe, General };
const char* class_name(SyntacticClass c) noexcept;

/// Linear: same variable sets, each exactly once per side. Balanced: same
/// variable sets. AffineSafe: each variable at most once per side.
SyntacticClass classify(const Equation& e);

/// Throws SignatureError on arity, parameter or context violations.
void validate(const Term& t, const Signature& sig, std::size_t context_size, bool allow_param_vars);
void validate(const Equation& e, const Signature& sig);
void validate(const Theory& th);

// ---------------------------------------------------------------------------
// Printing and comparison

/// Infix for symbolic binary operations, call syntax otherwise.
std::string to_string(const Term& t, std::span<const std::string> context);
std::string to_string(const Equation& e);

/// Canonical text of e with variables renamed by first occurrence and the
/// orientation chosen to minimize the text: equal iff equations agree up to
/// renaming and side swap.
std::string canonical_form(const Equation& e);

/// Equation lists agree as multisets of canonical forms.
bool same_equations(std::span<const Equation> a, std::span<const Equation> b);

/// Drops variables that do not occur and reorders the context to
/// first-occurrence order (lhs, then new variables of rhs).
Equation normalize_context(const Equation& e);

}  // namespace mlayers
