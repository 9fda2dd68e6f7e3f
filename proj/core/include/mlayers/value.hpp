#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlayers/rational.hpp"

namespace mlayers {

/// Shape of a Value node.
///
/// Atom   opaque carrier element ("a", "0")
/// Tuple  ordered k-tuple; the empty tuple is the point of the one-element set
/// Word   finite sequence (free monoid)
/// Set    finite set, sorted and duplicate-free
/// Bag    finite multiset, sorted keys with positive multiplicities
/// Dist   finitely supported distribution, sorted keys with positive weights summing to 1
/// Leaf   a generator embedded into a term or a nested normal form
/// App    operation node of a term: op name, optional rational parameter, argument list
enum class Kind : std::uint8_t { Atom, Tuple, Word, Set, Bag, Dist, Leaf, App };

const char* kind_name(Kind k) noexcept;

/// Immutable, structurally compared element of some T X.
///
/// Values share their nodes, so copies are cheap. Every constructor
/// canonicalizes (sorting, merging, reduction) so that structural equality
/// coincides with semantic equality of the represented element.
class Value {
public:
  Value();  // the unit point "*"

  static Value atom(std::string name);
  static Value unit() { return Value(); }
  static Value tuple(std::vector<Value> items);
  static Value pair(Value a, Value b) { return tuple({std::move(a), std::move(b)}); }
  static Value word(std::vector<Value> items);
  static Value set(std::vector<Value> items);
  static Value bag(std::vector<std::pair<Value, std::uint64_t>> entries);
  /// Throws std::invalid_argument unless weights are non-negative and sum to exactly 1.
  static Value dist(std::vector<std::pair<Value, Rational>> entries);
  static Value dirac(Value v) { return dist({{std::move(v), Rational(1)}}); }
  static Value leaf(Value v);
  static Value app(std::string op, std::optional<Rational> param, std::vector<Value> args);

  [[nodiscard]] Kind kind() const noexcept;
  [[nodiscard]] bool is(Kind k) const noexcept { return kind() == k; }
  /// Atom name or App operation name; empty otherwise.
  [[nodiscard]] const std::string& name() const noexcept;
  [[nodiscard]] const std::optional<Rational>& param() const noexcept;
  /// Tuple/Word/Set elements, Bag and Dist keys, App arguments, or the single Leaf child.
  [[nodiscard]] std::span<const Value> items() const noexcept;
  [[nodiscard]] std::span<const std::uint64_t> counts() const noexcept;
  [[nodiscard]] std::span<const Rational> weights() const noexcept;
  [[nodiscard]] std::size_t size() const noexcept { return items().size(); }
  [[nodiscard]] const Value& operator[](std::size_t i) const { return items()[i]; }
  [[nodiscard]] const Value& child() const { return items()[0]; }

  /// Multiplicity of v in a Bag, 0 if absent.
  [[nodiscard]] std::uint64_t count_of(const Value& v) const;
  /// Probability of v in a Dist, 0 if absent.
  [[nodiscard]] Rational weight_of(const Value& v) const;
  [[nodiscard]] bool contains(const Value& v) const;

  [[nodiscard]] std::size_t hash() const noexcept;

  friend bool operator==(const Value& a, const Value& b) noexcept;
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) noexcept;

private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const noexcept { return v.hash(); }
};

struct ValueVecHash {
  std::size_t operator()(const std::vector<Value>& vs) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& v : vs) h = (h ^ v.hash()) * 0x100000001b3ull;
    return h;
  }
};

/// Atoms named by the given strings, in order.
std::vector<Value> atoms(std::initializer_list<const char*> names);
/// Atoms "0", "1", ..., "n-1".
std::vector<Value> numbered_carrier(std::size_t n);

}  // namespace mlayers
