#include "mlayers/algebra.hpp"

namespace mlayers {

Value FiniteAlgebra::apply(const std::string& op, const std::optional<Rational>& param,
                           std::span<const Value> args) const {
  auto it = ops_.find(op);
  if (it == ops_.end()) throw SignatureError("algebra does not interpret '" + op + "'");
  return it->second(param, args);
}

FiniteAlgebra table_algebra(const std::vector<Value>& carrier, const Signature& sig,
                            const std::map<std::string, std::vector<std::size_t>>& tables) {
  std::map<Value, std::size_t> index;
  for (std::size_t i = 0; i < carrier.size(); ++i) index.emplace(carrier[i], i);
  std::map<std::string, OpFn> ops;
  for (const auto& op : sig.ops()) {
    auto it = tables.find(op.name);
    if (it == tables.end()) throw SignatureError("no table for '" + op.name + "'");
    ops[op.name] = [carrier, index, table = it->second](const std::optional<Rational>&,
                                                        std::span<const Value> args) {
      std::size_t pos = 0;
      for (const auto& a : args) {
        auto found = index.find(a);
        if (found == index.end()) throw SignatureError("argument outside the carrier");
        pos = pos * carrier.size() + found->second;
      }
      return carrier[table.at(pos)];
    };
  }
  return FiniteAlgebra(carrier, std::move(ops));
}

namespace {

std::optional<Rational> eval_param(const Term& t, const ParamEnv& params) {
  if (!t.param()) return std::nullopt;
  auto v = t.param()->eval(params);
  if (!v) throw SignatureError("parameter expression divides by zero");
  return v;
}

Value evaluate_from(const Term& t, const FiniteAlgebra& a, std::span<const Value> tuple, std::size_t& pos,
                    const ParamEnv& params) {
  if (t.is_var()) {
    if (pos >= tuple.size()) throw SignatureError("argument tuple too short");
    return tuple[pos++];
  }
  std::vector<Value> sub;
  sub.reserve(t.args().size());
  for (const auto& arg : t.args()) sub.push_back(evaluate_from(arg, a, tuple, pos, params));
  return a.apply(t.op(), eval_param(t, params), sub);
}

}  // namespace

Value evaluate(const Term& t, const FiniteAlgebra& a, std::span<const Value> arg_tuple, const ParamEnv& params) {
  std::size_t pos = 0;
  Value v = evaluate_from(t, a, arg_tuple, pos, params);
  if (pos != arg_tuple.size()) throw SignatureError("argument tuple too long");
  return v;
}

Value interpret(const Term& t, const FiniteAlgebra& a, std::span<const Value> valuation, const ParamEnv& params) {
  std::vector<Value> tuple;
  for (auto i : prepare_indices(t, valuation.size())) tuple.push_back(valuation[i]);
  return evaluate(t, a, tuple, params);
}

std::vector<Rational> default_param_grid() {
  return {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(1)};
}

namespace {

bool params_valid(const Term& t, const ParamEnv& env) {
  if (t.is_var()) return true;
  if (t.param()) {
    auto v = t.param()->eval(env);
    if (!v || !v->in_unit_interval()) return false;
  }
  for (const auto& a : t.args())
    if (!params_valid(a, env)) return false;
  return true;
}

}  // namespace

std::vector<ParamEnv> param_instances(const Equation& e, std::span<const Rational> grid) {
  auto names = e.param_vars();
  std::vector<ParamEnv> out;
  std::vector<std::size_t> idx(names.size(), 0);
  if (!names.empty() && grid.empty()) return out;
  while (true) {
    ParamEnv env;
    for (std::size_t i = 0; i < names.size(); ++i) env[names[i]] = grid[idx[i]];
    if (params_valid(e.lhs, env) && params_valid(e.rhs, env)) out.push_back(std::move(env));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == grid.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

HoldsResult holds(const FiniteAlgebra& a, const Equation& e, std::span<const Rational> grid) {
  std::vector<Rational> fallback;
  if (grid.empty()) {
    fallback = default_param_grid();
    grid = fallback;
  }
  HoldsResult result;
  const auto& carrier = a.carrier();
  const std::size_t n = e.context.size();
  auto envs = param_instances(e, grid);
  if (n > 0 && carrier.empty()) return result;
  std::vector<std::size_t> idx(n, 0);
  std::vector<Value> valuation(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) valuation[i] = carrier[idx[i]];
    for (const auto& env : envs) {
      ++result.valuations_checked;
      Value l = interpret(e.lhs, a, valuation, env);
      Value r = interpret(e.rhs, a, valuation, env);
      if (l != r) {
        result.holds = false;
        result.witness = HoldsWitness{valuation, env, l, r};
        return result;
      }
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == carrier.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return result;
}

}  // namespace mlayers
