#include "mlayers/value.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlayers {

struct Value::Node {
  Kind kind = Kind::Tuple;
  std::string name;
  std::optional<Rational> param;
  std::vector<Value> items;
  std::vector<std::uint64_t> counts;
  std::vector<Rational> weights;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

const std::optional<Rational>& no_param() {
  static const std::optional<Rational> p;
  return p;
}

}  // namespace

const char* kind_name(Kind k) noexcept {
  switch (k) {
    case Kind::Atom: return "atom";
    case Kind::Tuple: return "tuple";
    case Kind::Word: return "word";
    case Kind::Set: return "set";
    case Kind::Bag: return "bag";
    case Kind::Dist: return "dist";
    case Kind::Leaf: return "leaf";
    case Kind::App: return "app";
  }
  return "?";
}

Value::Value() {
  static const std::shared_ptr<const Node> unit_node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Tuple;
    n->hash = mix(static_cast<std::size_t>(Kind::Tuple), 0);
    return std::shared_ptr<const Node>(n);
  }();
  node_ = unit_node;
}

namespace {

template <class NodeT>
void compute_hash(NodeT& n) {
  std::size_t h = mix(static_cast<std::size_t>(n.kind) * 7919u, n.items.size());
  if (!n.name.empty()) h = mix(h, std::hash<std::string>{}(n.name));
  if (n.param) h = mix(h, n.param->hash());
  for (const auto& v : n.items) h = mix(h, v.hash());
  for (auto c : n.counts) h = mix(h, c);
  for (const auto& w : n.weights) h = mix(h, w.hash());
  n.hash = h;
}

}  // namespace

Value Value::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->name = std::move(name);
  compute_hash(*n);
  return Value(std::move(n));
}

Value Value::tuple(std::vector<Value> items) {
  if (items.empty()) return Value();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tuple;
  n->items = std::move(items);
  compute_hash(*n);
  return Value(std::move(n));
}

Value Value::word(std::vector<Value> items) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Word;
  n->items = std::move(items);
  compute_hash(*n);
  return Value(std::move(n));
}

Value Value::set(std::vector<Value> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Set;
  n->items = std::move(items);
  compute_hash(*n);
  return Value(std::move(n));
}

Value Value::bag(std::vector<std::pair<Value, std::uint64_t>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bag;
  for (auto& [v, c] : entries) {
    if (c == 0) continue;
    if (!n->items.empty() && n->items.back() == v) {
      n->counts.back() += c;
    } else {
      n->items.push_back(std::move(v));
      n->counts.push_back(c);
    }
  }
  compute_hash(*n);
  return Value(std::move(n));
}

Value Value::dist(std::vector<std::pair<Value, Rational>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  auto n = std::make_shared<Node>();
  n->kind = Kind::Dist;
  Rational total;
  for (auto& [v, w] : entries) {
    if (w < Rational(0)) throw std::invalid_argument("negative weight in distribution");
    total += w;
    if (w.is_zero()) continue;
    if (!n->items.empty() && n->items.back() == v) {
      n->weights.back() += w;
    } else {
      n->items.push_back(std::move(v));
      n->weights.push_back(w);
    }
  }
  if (!total.is_one()) throw std::invalid_argument("distribution weights sum to " + total.str() + ", not 1");
  compute_hash(*n);
  return Value(std::move(n));
}

Value Value::leaf(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Leaf;
  n->items.push_back(std::move(v));
  compute_hash(*n);
  return Value(std::move(n));
}

Value Value::app(std::string op, std::optional<Rational> param, std::vector<Value> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->name = std::move(op);
  n->param = param;
  n->items = std::move(args);
  compute_hash(*n);
  return Value(std::move(n));
}

Kind Value::kind() const noexcept { return node_->kind; }

const std::string& Value::name() const noexcept { return node_->name; }

const std::optional<Rational>& Value::param() const noexcept { return node_->param ? node_->param : no_param(); }

std::span<const Value> Value::items() const noexcept { return node_->items; }
std::span<const std::uint64_t> Value::counts() const noexcept { return node_->counts; }
std::span<const Rational> Value::weights() const noexcept { return node_->weights; }
std::size_t Value::hash() const noexcept { return node_->hash; }

std::uint64_t Value::count_of(const Value& v) const {
  auto it = std::lower_bound(node_->items.begin(), node_->items.end(), v);
  if (it == node_->items.end() || *it != v) return 0;
  return node_->counts[static_cast<std::size_t>(it - node_->items.begin())];
}

Rational Value::weight_of(const Value& v) const {
  auto it = std::lower_bound(node_->items.begin(), node_->items.end(), v);
  if (it == node_->items.end() || *it != v) return Rational(0);
  return node_->weights[static_cast<std::size_t>(it - node_->items.begin())];
}

bool Value::contains(const Value& v) const {
  if (kind() == Kind::Set || kind() == Kind::Bag || kind() == Kind::Dist)
    return std::binary_search(node_->items.begin(), node_->items.end(), v);
  return std::find(node_->items.begin(), node_->items.end(), v) != node_->items.end();
}

bool operator==(const Value& a, const Value& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (x.param.has_value() != y.param.has_value()) return x.param.has_value() ? std::strong_ordering::greater
                                                                              : std::strong_ordering::less;
  if (x.param) {
    if (auto c = *x.param <=> *y.param; c != 0) return c;
  }
  std::size_t n = std::min(x.items.size(), y.items.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x.items[i] <=> y.items[i]; c != 0) return c;
    if (!x.counts.empty()) {
      if (auto c = x.counts[i] <=> y.counts[i]; c != 0) return c;
    }
    if (!x.weights.empty()) {
      if (auto c = x.weights[i] <=> y.weights[i]; c != 0) return c;
    }
  }
  return x.items.size() <=> y.items.size();
}

std::vector<Value> atoms(std::initializer_list<const char*> names) {
  std::vector<Value> out;
  for (const char* n : names) out.push_back(Value::atom(n));
  return out;
}

std::vector<Value> numbered_carrier(std::size_t n) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Value::atom(std::to_string(i)));
  return out;
}

}  // namespace mlayers
