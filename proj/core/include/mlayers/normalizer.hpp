#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "mlayers/algebra.hpp"
#include "mlayers/monad.hpp"

namespace mlayers {

/// Canonical theories with a known normal form, plus the bounded fallback.
///
/// Monoid          words
/// Semilattice     finite sets
/// CommMonoid      multisets
/// Convex          rational distributions
/// IdemSemiring    sets of words
/// Semiring        multisets of words
/// TwoMonoidsAbsorb  a monoid and a commutative monoid whose unit absorbs the
///                 first: multisets of words whose letters are generators or
///                 nested sums
/// Generic         classes of bounded congruence closure
enum class NormalizerKind { Monoid, Semilattice, CommMonoid, Convex, IdemSemiring, Semiring, TwoMonoidsAbsorb, Generic };

const char* normalizer_name(NormalizerKind k) noexcept;
std::optional<NormalizerKind> parse_normalizer(std::string_view name);

/// Which operation of a concrete theory plays which role in a template.
/// Unused roles stay empty.
struct OpRoles {
  std::string mul;     // binary, associative, unit `one`
  std::string one;
  std::string plus;    // binary, associative and commutative, unit `zero`
  std::string zero;
  std::string choice;  // parameterized binary convex choice

  friend bool operator==(const OpRoles&, const OpRoles&) = default;
};

OpRoles default_roles();

/// The axioms of a canonical kind over the given operation names.
/// Throws std::invalid_argument for Generic.
Theory template_theory(NormalizerKind k, const OpRoles& roles);

/// Role assignment under which th equals the template of k up to renaming
/// of variables, equation order and orientation.
std::optional<OpRoles> match_template(const Theory& th, NormalizerKind k);

struct Recognition {
  NormalizerKind kind;
  OpRoles roles;
};
/// First canonical kind whose template matches th.
std::optional<Recognition> recognize(const Theory& th);

/// Free (Sigma,E)-algebra monad S realized by normal forms, with the
/// quotient q: T_Sigma X -> S X.
class QuotientMonad final : public Monad {
public:
  QuotientMonad(Theory th, NormalizerKind kind, OpRoles roles, Bound generic_bound);
  ~QuotientMonad() override;

  std::string name() const override;
  Value unit(const Value& x) const override;
  Value map(const ElemFn& f, const Value& tx) const override;
  Value mult(const Value& ttx) const override;
  Value fubini(const Value& tx, const Value& ty) const override;
  bool inner_only() const override;
  std::vector<Value> enumerate(std::span<const Value> carrier, const Bound& b) const override;
  bool truncated() const override;

  [[nodiscard]] const Theory& theory() const noexcept { return theory_; }
  [[nodiscard]] NormalizerKind kind() const noexcept { return kind_; }
  [[nodiscard]] const OpRoles& roles() const noexcept { return roles_; }

  /// Free-algebra operation on normal forms.
  [[nodiscard]] Value apply(const std::string& op, const std::optional<Rational>& param,
                            std::span<const Value> args) const;
  /// Normal form of a term over X.
  [[nodiscard]] Value q(const Value& term) const;
  /// Canonical term over X with q(representative(s)) = s.
  [[nodiscard]] Value representative(const Value& s) const;
  /// Interprets a term whose leaves already hold S-values.
  [[nodiscard]] Value fold(const Value& term) const;
  /// The free algebra restricted to the listed carrier of S-values.
  [[nodiscard]] FiniteAlgebra free_algebra(std::vector<Value> carrier) const;

private:
  struct Generic;
  Theory theory_;
  NormalizerKind kind_;
  OpRoles roles_;
  MonadPtr native_;  // for the kinds that coincide with a built-in monad
  std::unique_ptr<Generic> generic_;
};

using QuotientPtr = std::shared_ptr<const QuotientMonad>;

/// Throws SignatureError when th does not match the template of k.
QuotientPtr quotient_monad(const Theory& th, NormalizerKind k, const Bound& b = {});
/// Recognized canonical kind, else Generic.
QuotientPtr quotient_monad(const Theory& th, const Bound& b = {});

/// The built-in monad an outer layer of this kind realizes
/// (powerset, multiset, distribution), or nullptr.
MonadPtr native_monad(NormalizerKind k);

/// Depth of a term value; leaves and constants have depth 0.
std::size_t term_depth(const Value& term);

}  // namespace mlayers
