#include "mlayers/normalizer.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <unordered_map>

namespace mlayers {

namespace {

struct KindName {
  NormalizerKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {NormalizerKind::Monoid, "monoid"},
    {NormalizerKind::Semilattice, "semilattice"},
    {NormalizerKind::CommMonoid, "comm_monoid"},
    {NormalizerKind::Convex, "convex"},
    {NormalizerKind::IdemSemiring, "idem_semiring"},
    {NormalizerKind::Semiring, "semiring"},
    {NormalizerKind::TwoMonoidsAbsorb, "two_monoids_absorb"},
    {NormalizerKind::Generic, "generic"},
};

// Template construction -------------------------------------------------------

Term V(std::size_t i) { return Term::var(i); }
Term B(const std::string& op, Term a, Term b) { return Term::app(op, {std::move(a), std::move(b)}); }
Term C(const std::string& op) { return Term::constant(op); }

Equation eq(Term l, Term r) {
  return normalize_context(Equation{{"p", "q", "r"}, std::move(l), std::move(r)});
}

void monoid_axioms(std::vector<Equation>& out, const std::string& mul, const std::string& one) {
  out.push_back(eq(B(mul, V(0), C(one)), V(0)));
  out.push_back(eq(B(mul, C(one), V(0)), V(0)));
  out.push_back(eq(B(mul, B(mul, V(0), V(1)), V(2)), B(mul, V(0), B(mul, V(1), V(2)))));
}

void comm_monoid_axioms(std::vector<Equation>& out, const std::string& plus, const std::string& zero) {
  out.push_back(eq(B(plus, V(0), C(zero)), V(0)));
  out.push_back(eq(B(plus, C(zero), V(0)), V(0)));
  out.push_back(eq(B(plus, V(0), V(1)), B(plus, V(1), V(0))));
  out.push_back(eq(B(plus, B(plus, V(0), V(1)), V(2)), B(plus, V(0), B(plus, V(1), V(2)))));
}

void absorption_axioms(std::vector<Equation>& out, const std::string& mul, const std::string& zero) {
  out.push_back(eq(B(mul, V(0), C(zero)), C(zero)));
  out.push_back(eq(B(mul, C(zero), V(0)), C(zero)));
}

void distributivity_axioms(std::vector<Equation>& out, const std::string& mul, const std::string& plus) {
  out.push_back(eq(B(mul, V(0), B(plus, V(1), V(2))), B(plus, B(mul, V(0), V(1)), B(mul, V(0), V(2)))));
  out.push_back(eq(B(mul, B(plus, V(0), V(1)), V(2)), B(plus, B(mul, V(0), V(2)), B(mul, V(1), V(2)))));
}

std::vector<Equation> convex_axioms(const std::string& choice) {
  using Op = ParamExpr::Op;
  auto lam = ParamExpr::var("λ");
  auto tau = ParamExpr::var("τ");
  auto one = ParamExpr::constant(Rational(1));
  auto ch = [&](ParamExpr p, Term a, Term b) { return Term::app(choice, {std::move(a), std::move(b)}, std::move(p)); };
  // λ + (1-λ)*τ
  auto mixed = ParamExpr::binary(Op::Add, lam, ParamExpr::binary(Op::Mul, ParamExpr::binary(Op::Sub, one, lam), tau));
  std::vector<Equation> out;
  out.push_back(eq(ch(lam, V(0), V(0)), V(0)));
  out.push_back(eq(ch(lam, V(0), V(1)), ch(ParamExpr::binary(Op::Sub, one, lam), V(1), V(0))));
  out.push_back(eq(ch(lam, V(0), ch(tau, V(1), V(2))),
                   ch(mixed, ch(ParamExpr::binary(Op::Div, lam, mixed), V(0), V(1)), V(2))));
  return out;
}

struct Slots {
  bool mul = false, one = false, plus = false, zero = false, choice = false;
};

Slots slots_of(NormalizerKind k) {
  switch (k) {
    case NormalizerKind::Monoid: return {true, true, false, false, false};
    case NormalizerKind::Semilattice:
    case NormalizerKind::CommMonoid: return {false, false, true, true, false};
    case NormalizerKind::Convex: return {false, false, false, false, true};
    case NormalizerKind::IdemSemiring:
    case NormalizerKind::Semiring:
    case NormalizerKind::TwoMonoidsAbsorb: return {true, true, true, true, false};
    case NormalizerKind::Generic: break;
  }
  return {};
}

// Normal-form helpers ---------------------------------------------------------

Value concat(const Value& u, const Value& v) {
  std::vector<Value> items(u.items().begin(), u.items().end());
  items.insert(items.end(), v.items().begin(), v.items().end());
  return Value::word(std::move(items));
}

Value bag_sum(const Value& s, const Value& t) {
  std::vector<std::pair<Value, std::uint64_t>> e;
  for (std::size_t i = 0; i < s.size(); ++i) e.emplace_back(s[i], s.counts()[i]);
  for (std::size_t i = 0; i < t.size(); ++i) e.emplace_back(t[i], t.counts()[i]);
  return Value::bag(std::move(e));
}

std::uint64_t bag_total(const Value& s) {
  std::uint64_t n = 0;
  for (auto c : s.counts()) n += c;
  return n;
}

Value convex_mix(const Rational& lam, const Value& u, const Value& v) {
  std::vector<std::pair<Value, Rational>> e;
  const Rational rest = Rational(1) - lam;
  for (std::size_t i = 0; i < u.size(); ++i) e.emplace_back(u[i], lam * u.weights()[i]);
  for (std::size_t i = 0; i < v.size(); ++i) e.emplace_back(v[i], rest * v.weights()[i]);
  return Value::dist(std::move(e));
}

// Two monoids with absorption: a sum is a bag of products, a product a word of
// factors, a factor either Leaf(x) or a sum with at least two summands.
Value two_as_word(const Value& sum) {
  if (bag_total(sum) == 1) return sum[0];
  return Value::word({sum});
}

Value two_seq(const Value& s, const Value& t) {
  if (s.size() == 0 || t.size() == 0) return Value::bag({});
  Value w = concat(two_as_word(s), two_as_word(t));
  if (w.size() == 1 && w[0].is(Kind::Bag)) return w[0];
  return Value::bag({{w, 1}});
}

Value map_two(const Value& sum, const ElemFn& f);

Value map_two_word(const Value& w, const ElemFn& f) {
  std::vector<Value> items;
  for (const auto& fac : w.items()) items.push_back(fac.is(Kind::Leaf) ? Value::leaf(f(fac.child())) : map_two(fac, f));
  return Value::word(std::move(items));
}

Value map_two(const Value& sum, const ElemFn& f) {
  std::vector<std::pair<Value, std::uint64_t>> e;
  for (std::size_t i = 0; i < sum.size(); ++i) e.emplace_back(map_two_word(sum[i], f), sum.counts()[i]);
  return Value::bag(std::move(e));
}

Value nest_left(const std::string& op, std::vector<Value> xs, const std::string& empty) {
  if (xs.empty()) return Value::app(empty, std::nullopt, {});
  Value acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = Value::app(op, std::nullopt, {acc, xs[i]});
  return acc;
}

std::vector<Value> expand_bag(const Value& bag, const std::function<Value(const Value&)>& f) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < bag.size(); ++i)
    for (std::uint64_t c = 0; c < bag.counts()[i]; ++c) out.push_back(f(bag[i]));
  return out;
}

std::size_t term_size(const Value& t) {
  if (t.is(Kind::Leaf)) return 1;
  std::size_t n = 1;
  for (const auto& a : t.items()) n += term_size(a);
  return n;
}

}  // namespace

const char* normalizer_name(NormalizerKind k) noexcept {
  for (const auto& kn : kKindNames)
    if (kn.kind == k) return kn.name;
  return "?";
}

std::optional<NormalizerKind> parse_normalizer(std::string_view name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  return std::nullopt;
}

OpRoles default_roles() { return {";", "skip", "+", "abort", "⊕"}; }

Theory template_theory(NormalizerKind k, const OpRoles& r) {
  Theory th;
  switch (k) {
    case NormalizerKind::Monoid:
      th.signature = Signature({{r.mul, 2, false}, {r.one, 0, false}});
      monoid_axioms(th.equations, r.mul, r.one);
      break;
    case NormalizerKind::Semilattice:
      th.signature = Signature({{r.plus, 2, false}, {r.zero, 0, false}});
      comm_monoid_axioms(th.equations, r.plus, r.zero);
      th.equations.push_back(eq(B(r.plus, V(0), V(0)), V(0)));
      break;
    case NormalizerKind::CommMonoid:
      th.signature = Signature({{r.plus, 2, false}, {r.zero, 0, false}});
      comm_monoid_axioms(th.equations, r.plus, r.zero);
      break;
    case NormalizerKind::Convex:
      th.signature = Signature({{r.choice, 2, true}});
      th.equations = convex_axioms(r.choice);
      break;
    case NormalizerKind::IdemSemiring:
    case NormalizerKind::Semiring:
    case NormalizerKind::TwoMonoidsAbsorb:
      th.signature = Signature({{r.mul, 2, false}, {r.one, 0, false}, {r.plus, 2, false}, {r.zero, 0, false}});
      monoid_axioms(th.equations, r.mul, r.one);
      comm_monoid_axioms(th.equations, r.plus, r.zero);
      if (k == NormalizerKind::IdemSemiring) th.equations.push_back(eq(B(r.plus, V(0), V(0)), V(0)));
      if (k != NormalizerKind::TwoMonoidsAbsorb) distributivity_axioms(th.equations, r.mul, r.plus);
      absorption_axioms(th.equations, r.mul, r.zero);
      break;
    case NormalizerKind::Generic: throw std::invalid_argument("the generic normalizer has no template");
  }
  return th;
}

std::optional<OpRoles> match_template(const Theory& th, NormalizerKind k) {
  if (k == NormalizerKind::Generic) return std::nullopt;
  const Slots s = slots_of(k);
  const std::size_t wanted = s.mul + s.one + s.plus + s.zero + s.choice;
  if (th.signature.ops().size() != wanted) return std::nullopt;
  std::vector<std::string> binary, constants, param;
  for (const auto& op : th.signature.ops()) {
    if (op.arity == 2 && op.parameterized) param.push_back(op.name);
    else if (op.arity == 2) binary.push_back(op.name);
    else if (op.arity == 0 && !op.parameterized) constants.push_back(op.name);
    else return std::nullopt;
  }
  if (binary.size() != std::size_t(s.mul + s.plus) || constants.size() != std::size_t(s.one + s.zero) ||
      param.size() != std::size_t(s.choice))
    return std::nullopt;
  std::sort(binary.begin(), binary.end());
  std::sort(constants.begin(), constants.end());
  do {
    std::vector<std::string> cs = constants;
    do {
      OpRoles r;
      std::size_t bi = 0, ci = 0;
      if (s.mul) r.mul = binary[bi++];
      if (s.plus) r.plus = binary[bi++];
      if (s.one) r.one = cs[ci++];
      if (s.zero) r.zero = cs[ci++];
      if (s.choice) r.choice = param[0];
      if (same_equations(th.equations, template_theory(k, r).equations)) return r;
    } while (std::next_permutation(cs.begin(), cs.end()));
  } while (std::next_permutation(binary.begin(), binary.end()));
  return std::nullopt;
}

std::optional<Recognition> recognize(const Theory& th) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == NormalizerKind::Generic) continue;
    if (auto r = match_template(th, kn.kind)) return Recognition{kn.kind, *r};
  }
  return std::nullopt;
}

MonadPtr native_monad(NormalizerKind k) {
  switch (k) {
    case NormalizerKind::Monoid: return free_monoid();
    case NormalizerKind::Semilattice: return fin_powerset();
    case NormalizerKind::CommMonoid: return multiset();
    case NormalizerKind::Convex: return fin_distribution();
    default: return nullptr;
  }
}

std::size_t term_depth(const Value& term) {
  if (term.is(Kind::Leaf)) return 0;
  std::size_t d = 0;
  for (const auto& a : term.items()) d = std::max(d, term_depth(a) + 1);
  return d;
}

// ---------------------------------------------------------------------------
// Bounded congruence closure

struct QuotientMonad::Generic {
  Theory theory;
  Bound bound;

  struct Closure {
    std::vector<Value> terms;
    std::unordered_map<Value, std::size_t, ValueHash> index;
    std::vector<std::size_t> cls;  // class id per term
    std::vector<std::size_t> rep;  // representative term per class id
  };

  mutable std::mutex mu;
  mutable std::map<std::tuple<std::vector<Value>, std::size_t, std::vector<Rational>>, std::shared_ptr<const Closure>>
      cache;

  std::shared_ptr<const Closure> closure(const std::vector<Value>& gens, std::size_t depth,
                                         const std::vector<Rational>& grid) const {
    auto key = std::make_tuple(gens, depth, grid);
    {
      std::lock_guard lock(mu);
      if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto c = build(gens, depth, grid);
    std::lock_guard lock(mu);
    cache.emplace(std::move(key), c);
    return c;
  }

  std::shared_ptr<const Closure> build(const std::vector<Value>& gens, std::size_t depth,
                                       const std::vector<Rational>& grid) const {
    Bound b = bound;
    b.maxTermDepth = depth;
    b.probGrid = grid;
    auto c = std::make_shared<Closure>();
    c->terms = enumerate_terms(theory.signature, gens, b);
    const std::size_t n = c->terms.size();
    for (std::size_t i = 0; i < n; ++i) c->index.emplace(c->terms[i], i);

    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool changed = true;
    auto unite = [&](std::size_t a, std::size_t b2) {
      a = find(a);
      b2 = find(b2);
      if (a == b2) return;
      parent[std::max(a, b2)] = std::min(a, b2);
      changed = true;
    };

    while (changed) {
      changed = false;
      // congruence
      std::map<std::tuple<std::string, std::optional<Rational>, std::vector<std::size_t>>, std::size_t> sig;
      for (std::size_t i = 0; i < n; ++i) {
        const Value& t = c->terms[i];
        if (t.is(Kind::Leaf)) continue;
        std::vector<std::size_t> ks;
        for (const auto& a : t.items()) ks.push_back(find(c->index.at(a)));
        auto [it, fresh] = sig.emplace(std::make_tuple(t.name(), t.param(), std::move(ks)), i);
        if (!fresh) unite(it->second, i);
      }
      // class members for matching modulo the current congruence
      std::vector<std::size_t> root(n);
      std::unordered_map<std::size_t, std::vector<std::size_t>> members;
      for (std::size_t i = 0; i < n; ++i) members[root[i] = find(i)].push_back(i);
      std::function<std::size_t(std::size_t)> snap = [&](std::size_t x) { return root[x]; };
      for (const auto& e : theory.equations)
        for (int side = 0; side < 2; ++side) {
          const Term& l = side ? e.rhs : e.lhs;
          const Term& r = side ? e.lhs : e.rhs;
          if (l.is_var()) continue;
          auto lv = vars(l);
          bool covers = true;
          for (auto v : vars(r)) covers = covers && std::find(lv.begin(), lv.end(), v) != lv.end();
          if (!covers) continue;
          for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::optional<std::size_t>> subst(e.context.size());
            std::map<std::string, Rational> params;
            std::vector<std::pair<ParamExpr, Rational>> pending;
            match(*c, members, snap, l, i, subst, params, pending, [&] {
              for (const auto& [expr, val] : pending) {
                auto v = expr.eval(params);
                if (!v || *v != val) return;
              }
              auto inst = instantiate(*c, r, subst, params);
              if (!inst) return;
              auto it = c->index.find(*inst);
              if (it != c->index.end()) unite(i, it->second);
            });
          }
        }
    }

    c->cls.resize(n);
    std::map<std::size_t, std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
      auto root = find(i);
      auto [it, fresh] = ids.emplace(root, ids.size());
      c->cls[i] = it->second;
      if (fresh) c->rep.push_back(i);
      std::size_t& best = c->rep[it->second];
      const Value& cand = c->terms[i];
      const Value& cur = c->terms[best];
      auto sc = term_size(cand), su = term_size(cur);
      if (sc < su || (sc == su && cand < cur)) best = i;
    }
    return c;
  }

  static void match(const Closure& c, const std::unordered_map<std::size_t, std::vector<std::size_t>>& members,
                    const std::function<std::size_t(std::size_t)>& find, const Term& pat, std::size_t idx, std::vector<std::optional<std::size_t>>& subst,
                    std::map<std::string, Rational>& params, std::vector<std::pair<ParamExpr, Rational>>& pending,
                    const std::function<void()>& k) {
    if (pat.is_var()) {
      auto& slot = subst[pat.var_index()];
      if (slot) {
        if (find(*slot) == find(idx)) k();
        return;
      }
      slot = idx;
      k();
      slot.reset();
      return;
    }
    for (auto m : members.at(find(idx))) {
      const Value& t = c.terms[m];
      if (!t.is(Kind::App) || t.name() != pat.op() || t.size() != pat.args().size()) continue;
      std::optional<std::string> bound_here;
      std::size_t pending_mark = pending.size();
      if (pat.param()) {
        if (!t.param()) continue;
        const ParamExpr& pe = *pat.param();
        if (pe.op() == ParamExpr::Op::Var) {
          auto it = params.find(pe.name());
          if (it != params.end()) {
            if (it->second != *t.param()) continue;
          } else {
            params.emplace(pe.name(), *t.param());
            bound_here = pe.name();
          }
        } else if (pe.is_constant()) {
          if (pe.value() != *t.param()) continue;
        } else {
          pending.emplace_back(pe, *t.param());
        }
      } else if (t.param()) {
        continue;
      }
      std::function<void(std::size_t)> args = [&](std::size_t a) {
        if (a == pat.args().size()) {
          k();
          return;
        }
        match(c, members, find, pat.args()[a], c.index.at(t[a]), subst, params, pending, [&] { args(a + 1); });
      };
      args(0);
      if (bound_here) params.erase(*bound_here);
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pending_mark), pending.end());
    }
  }

  static std::optional<Value> instantiate(const Closure& c, const Term& t,
                                          const std::vector<std::optional<std::size_t>>& subst,
                                          const std::map<std::string, Rational>& params) {
    if (t.is_var()) return c.terms[*subst[t.var_index()]];
    std::vector<Value> args;
    for (const auto& a : t.args()) {
      auto v = instantiate(c, a, subst, params);
      if (!v) return std::nullopt;
      args.push_back(std::move(*v));
    }
    std::optional<Rational> p;
    if (t.param()) {
      p = t.param()->eval(params);
      if (!p || !p->in_unit_interval()) return std::nullopt;
    }
    return Value::app(t.op(), p, std::move(args));
  }

  Value normalize(const Value& term) const {
    std::vector<Value> gens;
    collect_leaves(term, gens);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Rational> grid = bound.probGrid;
    std::function<void(const Value&)> params = [&](const Value& t) {
      if (t.is(Kind::Leaf)) return;
      if (t.param()) grid.push_back(*t.param());
      for (const auto& a : t.items()) params(a);
    };
    params(term);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const std::size_t d = std::max(term_depth(term), bound.maxTermDepth);

    auto c1 = closure(gens, d, grid);
    std::shared_ptr<const Closure> c2;
    try {
      c2 = closure(gens, d + 1, grid);
    } catch (const BoundExceeded& e) {
      throw Inconclusive(std::string("congruence closure saturation could not be checked: ") + e.what());
    }
    std::map<std::size_t, std::size_t> fwd, back;
    for (std::size_t i = 0; i < c1->terms.size(); ++i) {
      std::size_t a = c1->cls[i], b = c2->cls[c2->index.at(c1->terms[i])];
      auto [f, nf] = fwd.emplace(a, b);
      auto [g, ng] = back.emplace(b, a);
      if (f->second != b || g->second != a)
        throw Inconclusive("congruence closure at depth " + std::to_string(d) + " is not saturated");
    }
    auto it = c1->index.find(term);
    if (it == c1->index.end()) throw Inconclusive("term outside the bounded closure");
    return c1->terms[c1->rep[c1->cls[it->second]]];
  }
};

// ---------------------------------------------------------------------------

QuotientMonad::QuotientMonad(Theory th, NormalizerKind kind, OpRoles roles, Bound generic_bound)
    : theory_(std::move(th)), kind_(kind), roles_(std::move(roles)), native_(native_monad(kind)) {
  if (kind_ == NormalizerKind::Generic) {
    generic_ = std::make_unique<Generic>();
    generic_->theory = theory_;
    generic_->bound = std::move(generic_bound);
  }
}

QuotientMonad::~QuotientMonad() = default;

std::string QuotientMonad::name() const { return std::string("quotient:") + normalizer_name(kind_); }

Value QuotientMonad::unit(const Value& x) const {
  switch (kind_) {
    case NormalizerKind::IdemSemiring: return Value::set({Value::word({x})});
    case NormalizerKind::Semiring: return Value::bag({{Value::word({x}), 1}});
    case NormalizerKind::TwoMonoidsAbsorb: return Value::bag({{Value::word({Value::leaf(x)}), 1}});
    case NormalizerKind::Generic: return generic_->normalize(Value::leaf(x));
    default: return native_->unit(x);
  }
}

Value QuotientMonad::map(const ElemFn& f, const Value& tx) const {
  auto word_map = [&](const Value& w) {
    std::vector<Value> items;
    for (const auto& x : w.items()) items.push_back(f(x));
    return Value::word(std::move(items));
  };
  switch (kind_) {
    case NormalizerKind::IdemSemiring: return fin_powerset()->map(word_map, tx);
    case NormalizerKind::Semiring: return multiset()->map(word_map, tx);
    case NormalizerKind::TwoMonoidsAbsorb: return map_two(tx, f);
    case NormalizerKind::Generic: return q(map_leaves(tx, f));
    default: return native_->map(f, tx);
  }
}

Value QuotientMonad::mult(const Value& ttx) const {
  if (native_) return native_->mult(ttx);
  return fold(representative(ttx));
}

Value QuotientMonad::fubini(const Value& tx, const Value& ty) const {
  if (native_ && !native_->inner_only()) return native_->fubini(tx, ty);
  throw InnerOnlyMonad(std::string("the ") + normalizer_name(kind_) +
                       " quotient monad has no Fubini transformation; it can only be an inner layer");
}

bool QuotientMonad::inner_only() const { return !native_ || native_->inner_only(); }

bool QuotientMonad::truncated() const { return true; }

std::vector<Value> QuotientMonad::enumerate(std::span<const Value> carrier, const Bound& b) const {
  switch (kind_) {
    case NormalizerKind::IdemSemiring: {
      auto words = free_monoid()->enumerate(carrier, b);
      return fin_powerset()->enumerate(words, b);
    }
    case NormalizerKind::Semiring: {
      auto words = free_monoid()->enumerate(carrier, b);
      return multiset()->enumerate(words, b);
    }
    case NormalizerKind::TwoMonoidsAbsorb: {
      std::vector<Value> leaves;
      for (const auto& x : carrier) leaves.push_back(Value::leaf(x));
      auto words = free_monoid()->enumerate(leaves, b);
      return multiset()->enumerate(words, b);
    }
    case NormalizerKind::Generic: {
      std::vector<Value> out;
      std::unordered_map<Value, bool, ValueHash> seen;
      for (const auto& t : enumerate_terms(theory_.signature, carrier, b)) {
        Value n = generic_->normalize(t);
        if (seen.emplace(n, true).second) out.push_back(n);
      }
      return out;
    }
    default: return native_->enumerate(carrier, b);
  }
}

Value QuotientMonad::apply(const std::string& op, const std::optional<Rational>& param,
                           std::span<const Value> args) const {
  const auto& r = roles_;
  auto bad = [&]() -> Value {
    throw SignatureError("operation '" + op + "' is not part of the " + normalizer_name(kind_) + " theory");
  };
  switch (kind_) {
    case NormalizerKind::Monoid:
      if (op == r.mul) return concat(args[0], args[1]);
      if (op == r.one) return Value::word({});
      return bad();
    case NormalizerKind::Semilattice:
      if (op == r.plus) return fin_powerset()->mult(Value::set({args[0], args[1]}));
      if (op == r.zero) return Value::set({});
      return bad();
    case NormalizerKind::CommMonoid:
      if (op == r.plus) return bag_sum(args[0], args[1]);
      if (op == r.zero) return Value::bag({});
      return bad();
    case NormalizerKind::Convex:
      if (op == r.choice) {
        if (!param) throw SignatureError("convex choice needs a parameter");
        return convex_mix(*param, args[0], args[1]);
      }
      return bad();
    case NormalizerKind::IdemSemiring:
      if (op == r.mul) {
        std::vector<Value> out;
        for (const auto& u : args[0].items())
          for (const auto& v : args[1].items()) out.push_back(concat(u, v));
        return Value::set(std::move(out));
      }
      if (op == r.one) return Value::set({Value::word({})});
      if (op == r.plus) return fin_powerset()->mult(Value::set({args[0], args[1]}));
      if (op == r.zero) return Value::set({});
      return bad();
    case NormalizerKind::Semiring:
      if (op == r.mul) {
        std::vector<std::pair<Value, std::uint64_t>> out;
        for (std::size_t i = 0; i < args[0].size(); ++i)
          for (std::size_t j = 0; j < args[1].size(); ++j)
            out.emplace_back(concat(args[0][i], args[1][j]), args[0].counts()[i] * args[1].counts()[j]);
        return Value::bag(std::move(out));
      }
      if (op == r.one) return Value::bag({{Value::word({}), 1}});
      if (op == r.plus) return bag_sum(args[0], args[1]);
      if (op == r.zero) return Value::bag({});
      return bad();
    case NormalizerKind::TwoMonoidsAbsorb:
      if (op == r.mul) return two_seq(args[0], args[1]);
      if (op == r.one) return Value::bag({{Value::word({}), 1}});
      if (op == r.plus) return bag_sum(args[0], args[1]);
      if (op == r.zero) return Value::bag({});
      return bad();
    case NormalizerKind::Generic: {
      const auto* sym = theory_.signature.find(op);
      if (!sym || sym->arity != args.size()) return bad();
      return generic_->normalize(Value::app(op, param, {args.begin(), args.end()}));
    }
  }
  return bad();
}

Value QuotientMonad::fold(const Value& term) const {
  if (term.is(Kind::Leaf)) return term.child();
  std::vector<Value> args;
  args.reserve(term.size());
  for (const auto& a : term.items()) args.push_back(fold(a));
  return apply(term.name(), term.param(), args);
}

Value QuotientMonad::q(const Value& term) const {
  return fold(map_leaves(term, [&](const Value& x) { return unit(x); }));
}

Value QuotientMonad::representative(const Value& s) const {
  const auto& r = roles_;
  auto leaf = [](const Value& x) { return Value::leaf(x); };
  auto word_rep = [&](const Value& w) {
    std::vector<Value> xs;
    for (const auto& x : w.items()) xs.push_back(leaf(x));
    return nest_left(r.mul, std::move(xs), r.one);
  };
  switch (kind_) {
    case NormalizerKind::Monoid: return word_rep(s);
    case NormalizerKind::Semilattice: {
      std::vector<Value> xs;
      for (const auto& x : s.items()) xs.push_back(leaf(x));
      return nest_left(r.plus, std::move(xs), r.zero);
    }
    case NormalizerKind::CommMonoid: return nest_left(r.plus, expand_bag(s, leaf), r.zero);
    case NormalizerKind::Convex: {
      // x1 ⊕_{w1} (rest renormalized), right-nested
      std::function<Value(std::size_t, Rational)> rec = [&](std::size_t i, Rational mass) -> Value {
        if (i + 1 == s.size()) return leaf(s[i]);
        Rational w = s.weights()[i] / mass;
        return Value::app(r.choice, w, {leaf(s[i]), rec(i + 1, mass - s.weights()[i])});
      };
      return rec(0, Rational(1));
    }
    case NormalizerKind::IdemSemiring: {
      std::vector<Value> xs;
      for (const auto& w : s.items()) xs.push_back(word_rep(w));
      return nest_left(r.plus, std::move(xs), r.zero);
    }
    case NormalizerKind::Semiring: return nest_left(r.plus, expand_bag(s, word_rep), r.zero);
    case NormalizerKind::TwoMonoidsAbsorb: {
      std::function<Value(const Value&)> sum_rep = [&](const Value& sum) {
        auto prod_rep = [&](const Value& w) {
          std::vector<Value> xs;
          for (const auto& f : w.items()) xs.push_back(f.is(Kind::Leaf) ? f : sum_rep(f));
          return nest_left(r.mul, std::move(xs), r.one);
        };
        return nest_left(r.plus, expand_bag(sum, prod_rep), r.zero);
      };
      return sum_rep(s);
    }
    case NormalizerKind::Generic: return s;
  }
  return s;
}

FiniteAlgebra QuotientMonad::free_algebra(std::vector<Value> carrier) const {
  std::map<std::string, OpFn> ops;
  for (const auto& op : theory_.signature.ops()) {
    ops[op.name] = [this, name = op.name](const std::optional<Rational>& p, std::span<const Value> args) {
      return apply(name, p, args);
    };
  }
  return FiniteAlgebra(std::move(carrier), std::move(ops));
}

QuotientPtr quotient_monad(const Theory& th, NormalizerKind k, const Bound& b) {
  if (k == NormalizerKind::Generic) return std::make_shared<QuotientMonad>(th, k, OpRoles{}, b);
  auto roles = match_template(th, k);
  if (!roles)
    throw SignatureError(std::string("theory does not match the ") + normalizer_name(k) + " axioms");
  return std::make_shared<QuotientMonad>(th, k, *roles, b);
}

QuotientPtr quotient_monad(const Theory& th, const Bound& b) {
  if (auto r = recognize(th)) return std::make_shared<QuotientMonad>(th, r->kind, r->roles, b);
  return std::make_shared<QuotientMonad>(th, NormalizerKind::Generic, OpRoles{}, b);
}

}  // namespace mlayers
