#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlayers/monad.hpp"

namespace mlayers {

/// The two legs of a diagram disagreeing on one input.
struct DiagramWitness {
  std::vector<Value> inputs;
  Value lhs;
  Value rhs;
};

/// Result of checking one commuting diagram exhaustively on a fragment.
struct CheckOutcome {
  std::string check;
  bool ok = true;
  std::size_t inputs = 0;
  std::string fragment;
  std::optional<DiagramWitness> witness;
};

/// Runs lhs/rhs on every input and stops at the first disagreement.
CheckOutcome check_diagram(std::string name, std::string fragment, std::span<const std::vector<Value>> inputs,
                           const std::function<Value(std::span<const Value>)>& lhs,
                           const std::function<Value(std::span<const Value>)>& rhs);

/// Cartesian power of a value list, as argument vectors.
std::vector<std::vector<Value>> tuples(std::span<const Value> xs, std::size_t k);

/// Enumerates with the first bound whose enumeration fits under `limit`.
/// Throws BoundExceeded when none fits.
std::vector<Value> enumerate_fitting(const Monad& t, std::span<const Value> carrier, std::span<const Bound> bounds,
                                     std::size_t limit);

/// Like enumerate_fitting, but halves the base (keeping a prefix) until
/// some bound fits; for nested levels where any sample is a valid input.
std::vector<Value> enumerate_sampled(const Monad& t, std::span<const Value> base, std::span<const Bound> bounds,
                                     std::size_t limit);

/// Bounds tried, in order, for the inner levels of nested enumerations.
std::vector<Bound> nested_bounds(const Bound& b);

/// Left unit, right unit and associativity.
std::vector<CheckOutcome> check_monad_laws(const Monad& t, std::span<const Value> carrier, const Bound& b);

/// psi(unit x, unit y) = unit(x,y).
CheckOutcome check_mm1(const Monad& t, std::span<const Value> carrier, const Bound& b);
/// mult . T(psi) . psi = psi . (mult x mult) on pairs of TTX values.
CheckOutcome check_mm2(const Monad& t, std::span<const Value> carrier, const Bound& b);
/// Left unitor, right unitor, associator.
std::vector<CheckOutcome> check_mf(const Monad& t, std::span<const Value> carrier, const Bound& b);
/// T(swap) . psi = psi . swap.
CheckOutcome check_sym(const Monad& t, std::span<const Value> carrier, const Bound& b);

/// A function between two small carriers, given by its graph.
struct FiniteFunction {
  std::vector<Value> domain;
  std::vector<Value> codomain;
  std::vector<std::size_t> image;  // index into codomain per domain element

  [[nodiscard]] Value operator()(const Value& x) const;
  [[nodiscard]] std::string describe() const;
};

/// Every function between carriers {0..m-1} -> {0..n-1} with 1 <= m,n <= max_size.
std::vector<FiniteFunction> small_functions(std::size_t max_size);

/// T(f) . unit = unit . f and T(f) . mult = mult . TT(f).
std::vector<CheckOutcome> check_monad_naturality(const Monad& t, const Bound& b, std::size_t max_size = 2);
/// T(f x g) . psi = psi . (Tf x Tg) for all small f, g.
CheckOutcome check_fubini_naturality(const Monad& t, const Bound& b, std::size_t max_size = 2);

}  // namespace mlayers
