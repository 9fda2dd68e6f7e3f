#include "mlayers/lifting.hpp"

#include <memory>
#include <unordered_map>

namespace mlayers {

SigmaLaw::SigmaLaw(Signature sig, MonadPtr outer) : sig_(std::move(sig)), outer_(std::move(outer)) {}

Value SigmaLaw::apply(const std::string& op, const std::optional<Rational>& param, std::span<const Value> vs) const {
  const auto& sym = sig_.at(op);
  if (sym.arity != vs.size()) throw SignatureError("arity mismatch applying '" + op + "'");
  const std::size_t k = vs.size();
  return outer_->map(
      [&](const Value& x) {
        std::vector<Value> leaves;
        for (auto& c : tuple_components(x, k)) leaves.push_back(Value::leaf(std::move(c)));
        return Value::app(op, param, std::move(leaves));
      },
      fubini_k(*outer_, vs));
}

Value RhoLaw::apply(const Value& term) const {
  const auto& t = *sl_.outer();
  if (term.is(Kind::Leaf)) return t.map([](const Value& x) { return Value::leaf(x); }, term.child());
  std::vector<Value> pushed;
  pushed.reserve(term.size());
  for (const auto& a : term.items()) pushed.push_back(apply(a));
  const std::size_t k = pushed.size();
  return t.map(
      [&](const Value& x) { return Value::app(term.name(), term.param(), tuple_components(x, k)); },
      fubini_k(t, pushed));
}

SigmaLaw build_sigma_law(const Signature& sig, MonadPtr outer) {
  if (outer->inner_only())
    throw InnerOnlyMonad("cannot build a distributive law with " + outer->name() +
                         " as the outer monad: it has no Fubini transformation");
  return SigmaLaw(sig, std::move(outer));
}

RhoLaw extend_to_rho(const SigmaLaw& sl) { return RhoLaw(sl); }

namespace {

struct LiftKey {
  std::optional<Rational> param;
  std::vector<Value> args;
  friend bool operator==(const LiftKey&, const LiftKey&) = default;
};

struct LiftKeyHash {
  std::size_t operator()(const LiftKey& k) const noexcept {
    std::size_t h = ValueVecHash{}(k.args);
    if (k.param) h ^= k.param->hash() + 0x9e3779b9;
    return h;
  }
};

}  // namespace

FiniteAlgebra lift_algebra(const Monad& t, const Signature& sig, const FiniteAlgebra& a,
                           std::vector<Value> lifted_carrier) {
  using Memo = std::unordered_map<LiftKey, Value, LiftKeyHash>;
  auto base = std::make_shared<FiniteAlgebra>(a);
  std::map<std::string, OpFn> ops;
  for (const auto& sym : sig.ops()) {
    auto memo = std::make_shared<Memo>();
    const std::string op = sym.name;
    const std::size_t k = sym.arity;
    ops[op] = [&t, base, memo, op, k](const std::optional<Rational>& p, std::span<const Value> vs) {
      LiftKey key{p, std::vector<Value>(vs.begin(), vs.end())};
      if (auto it = memo->find(key); it != memo->end()) return it->second;
      Value r = t.map([&](const Value& x) { return base->apply(op, p, tuple_components(x, k)); }, fubini_k(t, vs));
      memo->emplace(std::move(key), r);
      return r;
    };
  }
  return FiniteAlgebra(std::move(lifted_carrier), std::move(ops));
}

}  // namespace mlayers
