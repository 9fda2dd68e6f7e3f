#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mlayers/errors.hpp"
#include "mlayers/theory.hpp"
#include "mlayers/value.hpp"

namespace mlayers {

/// Finite truncation of an infinite free structure.
struct Bound {
  std::size_t maxWordLen = 2;
  std::size_t maxSetSize = 4;
  std::size_t maxMultiplicity = 2;
  std::vector<Rational> probGrid = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  std::size_t maxTermDepth = 2;
  /// Enumerations larger than this throw BoundExceeded.
  std::size_t ceiling = 200000;

  /// Throws std::invalid_argument when a bound is 0 or the grid is not a
  /// subset of [0,1] closed under r -> 1-r.
  void validate() const;
  [[nodiscard]] std::string describe() const;

  friend bool operator==(const Bound&, const Bound&) = default;
};

/// Smaller bound used for the inner level of nested enumerations (T T X and
/// the like), where sizes multiply.
Bound shrunk(const Bound& b);

using ElemFn = std::function<Value(const Value&)>;

/// A finitary monad on Set, restricted to finite carriers.
class Monad {
public:
  virtual ~Monad() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual Value unit(const Value& x) const = 0;
  [[nodiscard]] virtual Value map(const ElemFn& f, const Value& tx) const = 0;
  [[nodiscard]] virtual Value mult(const Value& ttx) const = 0;
  /// psi: TX x TY -> T(X x Y). Throws InnerOnlyMonad when undefined.
  [[nodiscard]] virtual Value fubini(const Value& tx, const Value& ty) const = 0;
  /// True when no Fubini transformation is available.
  [[nodiscard]] virtual bool inner_only() const { return false; }
  /// Every TX value within the bound, deterministic order, no duplicates.
  [[nodiscard]] virtual std::vector<Value> enumerate(std::span<const Value> carrier, const Bound& b) const = 0;
  /// Whether enumerate under-approximates TX.
  [[nodiscard]] virtual bool truncated() const { return true; }
};

using MonadPtr = std::shared_ptr<const Monad>;

/// Words; inner-only.
MonadPtr free_monoid();
/// Finite subsets; psi is the Cartesian product.
MonadPtr fin_powerset();
/// Finite multisets; psi multiplies multiplicities.
MonadPtr multiset();
/// Finitely supported rational distributions; psi is the product measure.
MonadPtr fin_distribution();
/// Sigma-terms over the carrier (Leaf / App values); inner-only.
MonadPtr free_term_monad(Signature sig);

/// psi^(k): left-nested iterated psi with flattened k-tuples.
/// k=0 gives unit(*), k=1 gives the value itself.
Value fubini_k(const Monad& t, std::span<const Value> values);

/// Components of the flattened tuple produced by fubini_k for arity k.
std::vector<Value> tuple_components(const Value& x, std::size_t k);

/// Sigma-terms of depth <= b.maxTermDepth over the carrier, by depth.
/// Parameterized operations take values from b.probGrid.
std::vector<Value> enumerate_terms(const Signature& sig, std::span<const Value> carrier, const Bound& b);

/// Leaves of a term value, left to right.
void collect_leaves(const Value& term, std::vector<Value>& out);
/// Applies f to every leaf content.
Value map_leaves(const Value& term, const ElemFn& f);
/// Replaces every leaf by f(content); f returns terms.
Value graft(const Value& term, const ElemFn& f);
/// Term value from a Term with variables replaced by leaves(valuation[i]).
Value term_value(const Term& t, std::span<const Value> valuation, const std::map<std::string, Rational>& params = {});

}  // namespace mlayers
