#include "mlayers/preservation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "mlayers/lifting.hpp"
#include "mlayers/normalizer.hpp"
#include "mlayers/render.hpp"

namespace mlayers {

const char* probe_status_name(ProbeStatus s) noexcept {
  switch (s) {
    case ProbeStatus::HoldsOnFragment: return "HOLDS_ON_FRAGMENT";
    case ProbeStatus::Fails: return "FAILS";
    case ProbeStatus::Declared: return "DECLARED";
  }
  return "?";
}

const char* verdict_name(VerdictStatus s) noexcept {
  switch (s) {
    case VerdictStatus::PreservedSyntactic: return "PRESERVED_SYNTACTIC";
    case VerdictStatus::PreservedResidual: return "PRESERVED_RESIDUAL";
    case VerdictStatus::Falsified: return "FALSIFIED";
    case VerdictStatus::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

Value diagonal(const Value& x) { return Value::pair(x, x); }

std::string fragments_text(const Monad& t, const ProbeConfig& cfg) {
  std::string s = t.name() + " on |X| in {";
  for (std::size_t i = 0; i < cfg.carrier_sizes.size(); ++i)
    s += (i ? "," : "") + std::to_string(cfg.carrier_sizes[i]);
  return s + "} " + cfg.bound.describe();
}

ProbeResult run_probe(const Monad& t, const ProbeConfig& cfg, std::string property,
                      const std::function<CheckOutcome(std::span<const Value>)>& check) {
  ProbeResult r{std::move(property), ProbeStatus::HoldsOnFragment, false, 0, fragments_text(t, cfg), std::nullopt};
  for (auto n : cfg.carrier_sizes) {
    auto carrier = numbered_carrier(n);
    auto out = check(carrier);
    r.inputs += out.inputs;
    if (!out.ok) {
      r.status = ProbeStatus::Fails;
      r.fragment = out.fragment;
      r.witness = out.witness;
      return r;
    }
  }
  return r;
}

std::vector<std::vector<Value>> singletons(const std::vector<Value>& xs) {
  std::vector<std::vector<Value>> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back({x});
  return out;
}

CheckOutcome relevant_on(const Monad& t, std::span<const Value> carrier, const Bound& b) {
  auto tx = t.enumerate(carrier, b);
  return check_diagram(
      "relevant", t.name() + " on |X|=" + std::to_string(carrier.size()), singletons(tx),
      [&](auto in) { return t.fubini(in[0], in[0]); }, [&](auto in) { return t.map(diagonal, in[0]); });
}

CheckOutcome affine_on(const Monad& t, std::span<const Value> carrier, const Bound& b) {
  auto tx = t.enumerate(carrier, b);
  const Value one = t.unit(Value::unit());
  return check_diagram(
      "affine", t.name() + " on |X|=" + std::to_string(carrier.size()), singletons(tx),
      [&](auto in) { return t.map([](const Value&) { return Value::unit(); }, in[0]); },
      [&](auto) { return one; });
}

}  // namespace

ProbeResult probe_symmetric(const Monad& t, const ProbeConfig& cfg) {
  return run_probe(t, cfg, "symmetric", [&](auto c) { return check_sym(t, c, cfg.bound); });
}

ProbeResult probe_relevant(const Monad& t, const ProbeConfig& cfg) {
  return run_probe(t, cfg, "relevant", [&](auto c) { return relevant_on(t, c, cfg.bound); });
}

ProbeResult probe_affine(const Monad& t, const ProbeConfig& cfg) {
  auto r = run_probe(t, cfg, "affine", [&](auto c) { return affine_on(t, c, cfg.bound); });
  if (r.holds()) {
    const std::vector<Value> one{Value::unit()};
    r.fragment += "; T1 has " + std::to_string(t.enumerate(one, cfg.bound).size()) + " enumerated value(s)";
  }
  return r;
}

std::optional<std::string> known_monad(const Monad& t) {
  std::string name = t.name();
  if (const auto* q = dynamic_cast<const QuotientMonad*>(&t)) {
    auto native = native_monad(q->kind());
    if (!native) return std::nullopt;
    name = native->name();
  }
  if (name == "powerset" || name == "multiset" || name == "distribution") return name;
  return std::nullopt;
}

namespace {

struct KnownEntry {
  bool relevant;
  bool affine;
  std::optional<Value> relevance_witness;
  std::optional<Value> affine_witness;
};

KnownEntry known_entry(const std::string& name) {
  const auto a = Value::atom("a");
  const auto b = Value::atom("b");
  if (name == "powerset") return {false, false, Value::set({a, b}), Value::set({})};
  if (name == "multiset") return {false, false, Value::bag({{a, 2}}), Value::bag({{a, 2}})};
  return {false, true, Value::dist({{a, Rational(1, 2)}, {b, Rational(1, 2)}}), std::nullopt};
}

// Tabulated failure: replay the witness, which must still disagree.
ProbeResult replay_failure(const Monad& t, const std::string& property, const Value& u) {
  ProbeResult r{property, ProbeStatus::Fails, false, 1, t.name() + " tabulated witness", std::nullopt};
  Value lhs, rhs;
  if (property == "relevant") {
    lhs = t.fubini(u, u);
    rhs = t.map(diagonal, u);
  } else {
    lhs = t.map([](const Value&) { return Value::unit(); }, u);
    rhs = t.unit(Value::unit());
  }
  if (lhs == rhs)
    throw Error("tabulated " + property + " witness " + canonical(u) + " no longer separates the two sides for " +
                t.name());
  r.witness = DiagramWitness{{u}, lhs, rhs};
  return r;
}

}  // namespace

MonadProfile profile_monad(const Monad& t, const ProbeConfig& cfg) {
  MonadProfile p;
  p.monad = t.name();
  p.symmetric = probe_symmetric(t, cfg);
  auto key = known_monad(t);
  if (!key) {
    p.relevant = probe_relevant(t, cfg);
    p.affine = probe_affine(t, cfg);
    return p;
  }
  p.from_table = true;
  const auto entry = known_entry(*key);
  if (!p.symmetric.holds())
    throw Error("probe finds " + t.name() + " not symmetric, contradicting the table of known monads");
  auto settle = [&](const std::string& property, bool declared, const std::optional<Value>& witness,
                    ProbeResult probed) {
    if (!declared) return replay_failure(t, property, *witness);
    if (!probed.holds())
      throw Error("probe finds " + t.name() + " not " + property + ", contradicting the table of known monads");
    return probed;
  };
  p.relevant = settle("relevant", entry.relevant, entry.relevance_witness,
                      entry.relevant ? probe_relevant(t, cfg) : ProbeResult{});
  p.affine = settle("affine", entry.affine, entry.affine_witness, entry.affine ? probe_affine(t, cfg) : ProbeResult{});
  return p;
}

CheckOutcome residual_commutes(const Monad& t, const Term& term, std::size_t context_size,
                               std::span<const Value> carrier, const Bound& b) {
  const auto idx = prepare_indices(term, context_size);
  const std::size_t k = idx.size();
  auto pick = [&](const Value& x) {
    auto comps = tuple_components(x, context_size);
    std::vector<Value> chosen;
    chosen.reserve(k);
    for (auto i : idx) chosen.push_back(comps[i]);
    if (k == 0) return Value::unit();
    if (k == 1) return chosen[0];
    return Value::tuple(std::move(chosen));
  };
  // keep |TX|^|V| manageable
  const double budget = 50000;
  const auto limit = context_size == 0 ? std::size_t{1} << 20
                                       : static_cast<std::size_t>(std::pow(budget, 1.0 / context_size));
  std::vector<Bound> bounds{b};
  for (const auto& nb : nested_bounds(b)) bounds.push_back(nb);
  auto tx = enumerate_fitting(t, carrier, bounds, std::max<std::size_t>(limit, 2));
  const auto inputs = tuples(tx, context_size);
  return check_diagram(
      "residual", t.name() + " on |X|=" + std::to_string(carrier.size()) + " (" + std::to_string(tx.size()) +
                      " values)",
      inputs,
      [&](auto in) {
        std::vector<Value> args;
        for (auto i : idx) args.push_back(in[i]);
        return fubini_k(t, args);
      },
      [&](auto in) { return t.map(pick, fubini_k(t, in)); });
}

// ---------------------------------------------------------------------------
// Model search over operation tables

namespace {

struct Node {
  int op = -1;  // -1: variable
  std::size_t var = 0;
  std::vector<Node> kids;
};

Node compile(const Term& t, const std::map<std::string, int>& ids) {
  if (t.is_var()) return Node{-1, t.var_index(), {}};
  Node n{ids.at(t.op()), 0, {}};
  for (const auto& a : t.args()) n.kids.push_back(compile(a, ids));
  return n;
}

void collect_ops(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) return;
  out.insert(t.op());
  for (const auto& a : t.args()) collect_ops(a, out);
}

struct Tables {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> ops;
};

std::size_t eval(const Node& node, const Tables& tb, const std::vector<std::size_t>& val) {
  if (node.op < 0) return val[node.var];
  std::size_t idx = 0;
  for (const auto& k : node.kids) idx = idx * tb.n + eval(k, tb, val);
  return tb.ops[static_cast<std::size_t>(node.op)][idx];
}

struct CompiledEq {
  Node lhs, rhs;
  std::size_t nvars = 0;
  int last_op = -1;  // highest op id mentioned; checked once that op is fixed
};

bool holds_on(const CompiledEq& e, const Tables& tb) {
  std::vector<std::size_t> val(e.nvars, 0);
  while (true) {
    if (eval(e.lhs, tb, val) != eval(e.rhs, tb, val)) return false;
    std::size_t j = e.nvars;
    while (j > 0 && ++val[j - 1] == tb.n) val[--j] = 0;
    if (j == 0) return true;
  }
}

std::size_t ipow(std::size_t b, std::size_t e, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > cap / std::max<std::size_t>(b, 1)) return cap + 1;
    r *= b;
  }
  return r;
}

}  // namespace

std::size_t for_each_model(const Theory& th, std::size_t n, const SearchConfig& cfg,
                           const std::function<bool(const std::map<std::string, std::vector<std::size_t>>&)>& visit) {
  // constants first, then by arity, so that unit laws prune early
  std::vector<OpSymbol> ops = th.signature.ops();
  for (const auto& o : ops)
    if (o.parameterized) throw SignatureError("operation '" + o.name + "' is parameterized");
  std::stable_sort(ops.begin(), ops.end(), [](const auto& a, const auto& b) { return a.arity < b.arity; });
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < ops.size(); ++i) ids[ops[i].name] = static_cast<int>(i);

  std::vector<CompiledEq> eqs;
  for (const auto& e : th.equations) {
    std::set<std::string> used;
    collect_ops(e.lhs, used);
    collect_ops(e.rhs, used);
    CompiledEq c{compile(e.lhs, ids), compile(e.rhs, ids), e.context.size(), -1};
    for (const auto& u : used) c.last_op = std::max(c.last_op, ids.at(u));
    eqs.push_back(std::move(c));
  }

  Tables tb{n, std::vector<std::vector<std::size_t>>(ops.size())};
  for (const auto& e : eqs)
    if (e.last_op < 0 && !holds_on(e, tb)) return 0;

  std::size_t visited = 0;
  bool stop = false;
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (stop) return;
    if (i == ops.size()) {
      ++visited;
      std::map<std::string, std::vector<std::size_t>> named;
      for (std::size_t j = 0; j < ops.size(); ++j) named[ops[j].name] = tb.ops[j];
      if (visit(named) || visited >= cfg.max_algebras) stop = true;
      return;
    }
    const std::size_t cells = ipow(n, ops[i].arity, cfg.max_tables);
    if (ipow(n, cells, cfg.max_tables) > cfg.max_tables)
      throw BoundExceeded("tables for '" + ops[i].name + "' on " + std::to_string(n) + " elements",
                          ipow(n, cells, ~std::size_t{0} / 2));
    auto& table = tb.ops[i];
    table.assign(cells, 0);
    while (!stop) {
      bool ok = true;
      for (const auto& e : eqs)
        if (e.last_op == static_cast<int>(i) && !holds_on(e, tb)) {
          ok = false;
          break;
        }
      if (ok) assign(i + 1);
      std::size_t j = cells;
      while (j > 0 && ++table[j - 1] == n) table[--j] = 0;
      if (j == 0) break;
    }
  };
  assign(0);
  return visited;
}

std::vector<Value> letter_carrier(std::size_t n) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Value::atom(std::string(1, static_cast<char>('a' + i))));
  return out;
}

namespace {

std::vector<Value> lifted_carrier(const Monad& t, std::span<const Value> base, const Bound& b, std::size_t nvars,
                                  std::size_t max_valuations) {
  const auto limit = nvars == 0 ? max_valuations
                                : static_cast<std::size_t>(std::pow(static_cast<double>(max_valuations),
                                                                    1.0 / static_cast<double>(nvars)));
  std::vector<Bound> bounds{b};
  for (const auto& nb : nested_bounds(b)) bounds.push_back(nb);
  return enumerate_fitting(t, base, bounds, std::max<std::size_t>(limit, 2));
}

// Base algebra of a counterexample, without its lifting.
FiniteAlgebra base_algebra(const Theory& inner, const Counterexample& c, const Bound& b) {
  if (c.model == Counterexample::Model::Table) return table_algebra(c.carrier, inner.signature, c.tables);
  auto s = quotient_monad(inner, b);
  return s->free_algebra(s->enumerate(c.carrier, shrunk(b)));
}

bool balanced(const Equation& e) {
  auto l = vars(e.lhs), r = vars(e.rhs);
  std::sort(l.begin(), l.end());
  std::sort(r.begin(), r.end());
  return l == r;
}

bool affine_safe(const Equation& e) {
  auto once = [](const Term& t) {
    auto a = args(t);
    std::sort(a.begin(), a.end());
    return std::adjacent_find(a.begin(), a.end()) == a.end();
  };
  return once(e.lhs) && once(e.rhs);
}

// Point where two values of the same monad disagree, preferring one in the
// support of only one side.
std::string gap_text(const Value& l, const Value& r) {
  if (l.kind() == r.kind() && (l.is(Kind::Dist) || l.is(Kind::Bag) || l.is(Kind::Set))) {
    std::set<Value> keys(l.items().begin(), l.items().end());
    keys.insert(r.items().begin(), r.items().end());
    auto describe = [&](const Value& k) -> std::string {
      if (l.is(Kind::Dist)) return "gap " + l.weight_of(k).str() + " vs " + r.weight_of(k).str() + " at " + canonical(k);
      if (l.is(Kind::Bag))
        return "gap " + std::to_string(l.count_of(k)) + " vs " + std::to_string(r.count_of(k)) + " at " + canonical(k);
      return "gap: " + canonical(k) + (l.contains(k) ? " only on the left" : " only on the right");
    };
    for (const auto& k : keys)
      if (l.contains(k) != r.contains(k)) return describe(k);
    for (const auto& k : keys)
      if ((l.is(Kind::Dist) && l.weight_of(k) != r.weight_of(k)) || (l.is(Kind::Bag) && l.count_of(k) != r.count_of(k)))
        return describe(k);
  }
  return canonical(l) + " vs " + canonical(r);
}

std::string probe_line(const ProbeResult& p) {
  std::string s = p.property + ": " + probe_status_name(p.status);
  if (p.status == ProbeStatus::HoldsOnFragment) s += " (" + std::to_string(p.inputs) + " inputs, " + p.fragment + ")";
  if (p.witness)
    s += " witness " + canonical(p.witness->inputs[0]) + ", " + gap_text(p.witness->lhs, p.witness->rhs);
  return s;
}

// Valuations built from the profile's failure witnesses, tried before the
// exhaustive sweep so that the tabulated witness is the one reported.
std::vector<std::vector<Value>> seeded_valuations(const MonadProfile& profile, std::size_t nvars,
                                                  const std::vector<Value>& lifted) {
  std::vector<Value> seeds;
  for (const auto* p : {&profile.relevant, &profile.affine})
    if (p->witness && std::find(lifted.begin(), lifted.end(), p->witness->inputs[0]) != lifted.end() &&
        std::find(seeds.begin(), seeds.end(), p->witness->inputs[0]) == seeds.end())
      seeds.push_back(p->witness->inputs[0]);
  if (seeds.empty() || nvars == 0) return {};
  return tuples(seeds, nvars);
}

std::optional<HoldsWitness> falsify(const FiniteAlgebra& lifted, const Equation& e,
                                    const std::vector<std::vector<Value>>& seeds) {
  if (e.param_vars().empty())
    for (const auto& val : seeds) {
      Value l = interpret(e.lhs, lifted, val);
      Value r = interpret(e.rhs, lifted, val);
      if (l != r) return HoldsWitness{val, {}, l, r};
    }
  auto r = holds(lifted, e);
  if (r.holds) return std::nullopt;
  return r.witness;
}

std::string describe_model(const Counterexample& c) {
  std::string s = c.model == Counterexample::Model::Table ? "table model on {" : "free model generated by {";
  for (std::size_t i = 0; i < c.carrier.size(); ++i) s += (i ? "," : "") + canonical(c.carrier[i]);
  s += "}";
  for (const auto& [op, tab] : c.tables) {
    s += " " + op + "=[";
    for (std::size_t i = 0; i < tab.size(); ++i) s += (i ? "," : "") + canonical(c.carrier[tab[i]]);
    s += "]";
  }
  return s;
}

}  // namespace

CheckOutcome ResidualCache::get(const Monad& t, const Term& side, std::size_t context_size,
                                std::span<const Value> carrier, const Bound& b) {
  Key key{carrier.size(), prepare_indices(side, context_size)};
  key.second.push_back(context_size);
  {
    std::lock_guard lock(m_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto out = residual_commutes(t, side, context_size, carrier, b);
  std::lock_guard lock(m_);
  return entries_.emplace(std::move(key), std::move(out)).first->second;
}

std::size_t ResidualCache::size() const {
  std::lock_guard lock(m_);
  return entries_.size();
}

Verdict check_preservation(const Monad& t, const MonadProfile& profile, const Theory& inner, const Equation& e,
                           const PreservationConfig& cfg) {
  if (!profile.symmetric.holds())
    throw Error(t.name() + " is not symmetric; preservation is only decided for commutative monads");
  Verdict v{e, classify(e), VerdictStatus::Unknown, "", {}, std::nullopt};
  auto syntactic = [&](std::string theorem, std::string why) {
    v.status = VerdictStatus::PreservedSyntactic;
    v.theorem = std::move(theorem);
    v.evidence.push_back(std::move(why));
    return v;
  };

  if (e.lhs == e.rhs) return syntactic("syntactic-identity", "both sides are the same term");
  if (v.cls == SyntacticClass::Linear)
    return syntactic("linear", "every variable occurs exactly once on each side; " + probe_line(profile.symmetric));
  const bool rel = profile.relevant.holds();
  const bool aff = profile.affine.holds();
  if (balanced(e) && rel)
    return syntactic("relevant-balanced", "same variables on both sides; " + probe_line(profile.relevant));
  if (affine_safe(e) && aff)
    return syntactic("affine-safe", "no variable repeated on either side; " + probe_line(profile.affine));
  if (rel && aff) return syntactic("relevant-affine", probe_line(profile.relevant) + "; " + probe_line(profile.affine));

  if (!rel) v.evidence.push_back(probe_line(profile.relevant));
  if (!aff) v.evidence.push_back(probe_line(profile.affine));

  if (cfg.residual) {
    bool all = true;
    std::size_t inputs = 0;
    for (auto n : cfg.probes.carrier_sizes) {
      auto carrier = numbered_carrier(n);
      for (const Term* side : {&e.lhs, &e.rhs}) {
        auto out = cfg.residual_cache
                       ? cfg.residual_cache->get(t, *side, e.context.size(), carrier, cfg.probes.bound)
                       : residual_commutes(t, *side, e.context.size(), carrier, cfg.probes.bound);
        inputs += out.inputs;
        if (!out.ok) {
          all = false;
          std::string at;
          for (const auto& x : out.witness->inputs) at += (at.empty() ? "" : ", ") + canonical(x);
          v.evidence.push_back("residual square of " + to_string(*side, e.context) + " fails on " + out.fragment +
                               " at (" + at + "): " + gap_text(out.witness->lhs, out.witness->rhs));
          break;
        }
      }
      if (!all) break;
    }
    if (all) {
      v.status = VerdictStatus::PreservedResidual;
      v.evidence.push_back("residual squares of both sides commute on " + std::to_string(inputs) + " inputs (" +
                           fragments_text(t, cfg.probes) + ")");
      return v;
    }
  }

  if (!cfg.model_search) {
    v.evidence.push_back("model search disabled");
    return v;
  }
  for (const auto& op : inner.signature.ops())
    if (op.parameterized) {
      v.evidence.push_back("model search skipped: '" + op.name +
                           "' is parameterized, so models are not finite tables");
      return v;
    }

  auto found = [&](Counterexample c) {
    v.status = VerdictStatus::Falsified;
    v.evidence.push_back("lifted " + describe_model(c) + " separates the sides: " + gap_text(c.lhs, c.rhs));
    v.counterexample = std::move(c);
    return v;
  };

  std::vector<std::string> exhausted;
  std::size_t total = 0;
  for (std::size_t n = 1; n <= cfg.search.max_carrier; ++n) {
    const auto carrier = letter_carrier(n);
    std::vector<Value> lifted;
    try {
      lifted = lifted_carrier(t, carrier, cfg.probes.bound, e.context.size(), cfg.search.max_valuations);
    } catch (const BoundExceeded& ex) {
      exhausted.push_back(std::string("lifted carrier over ") + std::to_string(n) + " elements: " + ex.what());
      break;
    }
    const auto seeds = seeded_valuations(profile, e.context.size(), lifted);
    std::optional<Counterexample> cex;
    try {
      std::size_t visited = for_each_model(inner, n, cfg.search, [&](const auto& tables) {
        auto alg = lift_algebra(t, inner.signature, table_algebra(carrier, inner.signature, tables), lifted);
        auto w = falsify(alg, e, seeds);
        if (!w) return false;
        cex = Counterexample{Counterexample::Model::Table, carrier, tables, w->valuation, w->params, w->lhs, w->rhs};
        return true;
      });
      total += visited;
      if (visited >= cfg.search.max_algebras)
        exhausted.push_back("stopped after " + std::to_string(visited) + " models on " + std::to_string(n) +
                            " elements");
    } catch (const BoundExceeded& ex) {
      exhausted.push_back(std::string("model search: ") + ex.what());
      break;
    }
    if (cex) return found(std::move(*cex));
  }

  if (cfg.search.max_generators > 0) {
    if (auto rec = recognize(inner)) {
      auto s = quotient_monad(inner, rec->kind, cfg.probes.bound);
      for (std::size_t g = 1; g <= cfg.search.max_generators; ++g) {
        const auto gens = letter_carrier(g);
        try {
          auto base = s->free_algebra(s->enumerate(gens, shrunk(cfg.probes.bound)));
          auto lifted = lifted_carrier(t, base.carrier(), shrunk(cfg.probes.bound), e.context.size(),
                                       cfg.search.max_valuations);
          auto alg = lift_algebra(t, inner.signature, base, lifted);
          if (auto w = falsify(alg, e, seeded_valuations(profile, e.context.size(), lifted)))
            return found(
                Counterexample{Counterexample::Model::Free, gens, {}, w->valuation, w->params, w->lhs, w->rhs});
          ++total;
        } catch (const BoundExceeded& ex) {
          exhausted.push_back(std::string("free model on ") + std::to_string(g) + " generators: " + ex.what());
          break;
        }
      }
    } else {
      exhausted.push_back("free models skipped: the inner theory has no recognized normal form");
    }
  }

  v.evidence.push_back("no counterexample among " + std::to_string(total) + " models: table models on <= " +
                       std::to_string(cfg.search.max_carrier) + " elements, free models on <= " +
                       std::to_string(cfg.search.max_generators) + " generators, lifted to " +
                       cfg.probes.bound.describe());
  for (auto& x : exhausted) v.evidence.push_back("bound reached: " + x);
  return v;
}

std::vector<Verdict> check_theory(const Monad& t, const MonadProfile& profile, const Theory& inner,
                                  const PreservationConfig& cfg) {
  const auto& eqs = inner.equations;
  std::vector<std::optional<Verdict>> out(eqs.size());
  std::vector<std::exception_ptr> errors(eqs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < eqs.size();) {
      try {
        out[i] = check_preservation(t, profile, inner, eqs[i], cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(eqs.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  std::vector<Verdict> verdicts;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    verdicts.push_back(std::move(*out[i]));
  }
  return verdicts;
}

bool replay(const Monad& t, const Theory& inner, const Equation& e, const Counterexample& c) {
  auto alg = lift_algebra(t, inner.signature, base_algebra(inner, c, Bound{}), c.valuation);
  Value l = interpret(e.lhs, alg, c.valuation, c.params);
  Value r = interpret(e.rhs, alg, c.valuation, c.params);
  return l != r && l == c.lhs && r == c.rhs;
}

}  // namespace mlayers
