// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <variant>

#include "mlayers/commands.hpp"
#include "mlayers/distlaw.hpp"
#include "mlayers/lifting.hpp"
#include "mlayers/render.hpp"

using namespace mlayers;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string layers_file(const char* name) { return std::string(MLAYERS_LAYERS_DIR) + "/" + name; }

const SpecFile& pnk() {
  static const SpecFile s = load_spec(layers_file("probnetkat.layers"));
  return s;
}

const CompositionReport& checked_stack() {
  static const CompositionReport r = check_stack(pnk().layers, pipeline_config(pnk(), {}));
  return r;
}

// Collects failures; keeps the first few for the report line.
struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void add(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  void add(const CheckOutcome& c, const std::string& where) {
    std::string at;
    if (c.witness)
      for (const auto& x : c.witness->inputs) at += (at.empty() ? " at " : ", ") + canonical(x);
    add(c.ok, where + " " + c.check + at);
  }
  [[nodiscard]] Outcome outcome(const std::string& summary) const {
    if (failures.empty()) return {true, summary};
    std::string s = std::to_string(failures.size()) + " failure(s): ";
    for (std::size_t i = 0; i < failures.size() && i < 3; ++i) s += (i ? "; " : "") + failures[i];
    return {false, s};
  }
};

std::vector<Value> first_atoms(std::size_t n) {
  std::vector<Value> all = atoms({"a", "b", "c"});
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n)};
}

Equation eq(std::string_view text, const Signature& sig) { return parse_equation(text, sig, pnk().precedence); }

Signature full_signature() {
  Signature sig;
  for (const auto& l : pnk().layers) sig = sig.merged(l.theory.signature);
  return sig;
}

const Verdict* find_verdict(const std::vector<Verdict>& vs, const Equation& e) {
  for (const auto& v : vs)
    if (canonical_form(v.equation) == canonical_form(e)) return &v;
  return nullptr;
}

// --- 1: monad laws and monoidal diagrams ------------------------------------

Outcome monad_suite() {
  Bound b;
  std::vector<MonadPtr> monads{free_monoid(), fin_powerset(), multiset(), fin_distribution()};
  for (const auto& l : pnk().layers) monads.push_back(quotient_monad(l.theory, l.normalizer));
  for (const auto& st : checked_stack().stages) {
    monads.push_back(quotient_monad(Theory{st.input.signature, st.weakened.kept}));
    if (recognize(st.output)) monads.push_back(quotient_monad(st.output));
  }
  std::set<std::string> names;
  std::erase_if(monads, [&](const MonadPtr& m) { return !names.insert(m->name()).second; });
  Tally t;
  std::size_t diagrams = 0;
  for (const auto& m : monads) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto carrier = first_atoms(n);
      const std::string where = m->name() + " |X|=" + std::to_string(n);
      for (const auto& c : check_monad_laws(*m, carrier, b)) t.add(c, where);
      if (m->inner_only()) continue;
      std::vector<CheckOutcome> ds{check_mm1(*m, carrier, b), check_mm2(*m, carrier, b), check_sym(*m, carrier, b)};
      for (auto& c : check_mf(*m, carrier, b)) ds.push_back(std::move(c));
      for (const auto& c : ds) t.add(c, where);
      diagrams += ds.size();
    }
  }
  return t.outcome(std::to_string(monads.size()) + " monads on |X| = 1..3, " + std::to_string(t.checks) +
                   " checks (" + std::to_string(diagrams) + " MM/MF/SYM)");
}

// --- 2: stage 1, words under sets ------------------------------------------

Outcome stage_one() {
  const auto& st = checked_stack().stages.at(0);
  Tally t;
  t.add(st.weakened.dropped.empty(), "an equation was dropped");
  for (const auto& v : st.verdicts)
    t.add(v.status == VerdictStatus::PreservedSyntactic && v.theorem == "linear", to_string(v.equation) + " not linear");

  LawConfig cfg;
  cfg.carrier = atoms({"a", "b"});
  cfg.bound.maxWordLen = 2;
  cfg.bound.maxSetSize = 16;  // every subset of the 7 words
  cfg.max_inputs = std::size_t{1} << 16;
  const auto& seed = pnk().layers.at(0);
  auto built = build_quotient_law(quotient_monad(seed.theory, seed.normalizer), fin_powerset(), st.verdicts, cfg);
  t.add(built.well_defined, "stage 1");
  std::string counts;
  std::set<std::string> names;
  for (const auto& r : verify_distlaw(built.law, cfg)) {
    t.add(r, "stage 1");
    names.insert(r.check);
    if (r.check.starts_with("DL")) counts += (counts.empty() ? "" : ", ") + r.check + " " + std::to_string(r.inputs);
  }
  for (const char* n : {"DL1", "DL2", "DL3", "DL4"}) t.add(names.count(n) == 1, std::string(n) + " missing");
  return t.outcome("3 equations kept (linear), λ built; " + counts + " inputs");
}

// --- 3: stage 2, distributions over the idempotent semiring ---------------

Outcome stage_two() {
  const auto& st = checked_stack().stages.at(1);
  const Signature sig = full_signature();
  Tally t;
  auto verdict = [&](std::string_view text) {
    const auto* v = find_verdict(st.verdicts, eq(text, sig));
    t.add(v != nullptr, "no verdict for " + std::string(text));
    return v;
  };
  auto has_line = [](const Verdict& v, std::string_view needle) {
    for (const auto& line : v.evidence)
      if (line.find(needle) != std::string::npos) return true;
    return false;
  };

  if (const auto* v = verdict("x + x = x")) {
    t.add(v->status == VerdictStatus::Falsified, "idempotency not falsified");
    t.add(has_line(*v, "witness (a: 1/2, b: 1/2), gap 1/4 vs 0"), "idempotency witness or gap missing");
  }
  for (const char* d : {"p ; (q + r) = (p ; q) + (p ; r)", "(q + r) ; p = (q ; p) + (r ; p)"})
    if (const auto* v = verdict(d)) t.add(v->status == VerdictStatus::Falsified, std::string(d) + " not falsified");
  for (const char* s : {"x ; (y ; z) = (x ; y) ; z", "x ; skip = x", "skip ; x = x", "x + (y + z) = (x + y) + z",
                        "x + y = y + x", "x + abort = x", "abort + x = x"})
    if (const auto* v = verdict(s)) t.add(v->status == VerdictStatus::PreservedSyntactic, std::string(s) + " not syntactic");

  const auto d = fin_distribution();
  t.add(st.profile.affine.holds(), "D not affine");
  t.add(d->enumerate(std::vector<Value>{Value::unit()}, Bound{}).size() == 1, "D1 has more than one value");
  for (const char* a : {"p ; abort = abort", "abort ; p = abort"})
    if (const auto* v = verdict(a))
      t.add(v->status == VerdictStatus::PreservedSyntactic && v->theorem == "affine-safe",
            std::string(a) + " not preserved by the affine criterion");

  // two monoids with absorption, convex algebra, distributivity of ⊕
  std::vector<Equation> axioms;
  for (const char* text : {"p ; skip = p", "skip ; p = p", "(p ; q) ; r = p ; (q ; r)", "p + abort = p", "abort + p = p",
                           "p + q = q + p", "(p + q) + r = p + (q + r)", "p ; abort = abort", "abort ; p = abort",
                           "p ⊕[λ] p = p", "p ⊕[λ] q = q ⊕[1-λ] p",
                           "p ⊕[λ] (q ⊕[τ] r) = (p ⊕[λ/(λ+(1-λ)*τ)] q) ⊕[λ+(1-λ)*τ] r",
                           "p ; (q ⊕[λ] r) = (p ; q) ⊕[λ] (p ; r)", "(q ⊕[λ] r) ; p = (q ; p) ⊕[λ] (r ; p)",
                           "p + (q ⊕[λ] r) = (p + q) ⊕[λ] (p + r)", "(q ⊕[λ] r) + p = (q + p) ⊕[λ] (r + p)"})
    axioms.push_back(eq(text, sig));
  t.add(same_equations(checked_stack().final_theory.equations, axioms), "weakened theory differs from the hand axioms");
  t.add(checked_stack().final_theory.equations.size() == axioms.size(), "weakened theory has extra equations");
  return t.outcome("3 falsified with witness, 7 syntactic, absorption affine; " +
                   std::to_string(axioms.size()) + " axioms match");
}

// --- 4: sets over sets -----------------------------------------------------

Outcome powerset_over_powerset() {
  const auto spec = load_spec(layers_file("sets_over_sets.layers"));
  const auto report = compose_stack(spec.layers, pipeline_config(spec, {}));
  const auto& st = report.stages.at(0);
  const auto& inner = spec.layers.at(0).theory;
  const auto p = native_monad(spec.layers.at(1).normalizer);
  Tally t;
  t.add(st.weakened.dropped.size() == 1, "expected exactly one dropped equation");
  std::string cex;
  if (!st.weakened.dropped.empty()) {
    const auto& d = st.weakened.dropped.front();
    t.add(canonical_form(d.equation) == canonical_form(eq("x + x = x", inner.signature)), "idempotency not dropped");
    t.add(d.verdict.counterexample.has_value(), "no counterexample");
    if (d.verdict.counterexample) {
      const auto& c = *d.verdict.counterexample;
      t.add(c.carrier.size() == 2, "counterexample carrier is not 2 elements");
      t.add(replay(*p, inner, d.equation, c), "counterexample does not replay");
      cex = canonical(c.lhs) + " vs " + canonical(c.rhs);
    }
  }
  bool refused = false;
  try {
    (void)build_quotient_law(quotient_monad(inner), p, check_theory(*p, profile_monad(*p), inner));
  } catch (const LawRefused&) {
    refused = true;
  }
  t.add(refused, "law on the full theory was not refused");
  return t.outcome("idempotency dropped (" + cex + "), full-theory law refused");
}

// --- 5: verdicts against lifted algebras ------------------------------------

// Terms over {•/2, 0/0} and x, y, z as a DAG so values can be shared.
struct TermNode {
  int kind;  // 0 var, 1 zero, 2 op
  std::size_t a = 0, b = 0;
};

struct Element {
  // powerset: bit mask; multiset: counts; distribution: weights
  std::vector<Rational> w;
  friend auto operator<=>(const Element&, const Element&) = default;
};

// Lifting of a base table algebra on {0..n-1} through T, written directly per monad.
struct LiftedOps {
  std::function<Element(const Element&, const Element&, const std::vector<std::size_t>&, std::size_t)> op;
  std::function<Element(std::size_t, std::size_t)> unit;
  std::function<std::vector<Element>(std::size_t)> carrier;
};

LiftedOps lifted_ops(const std::string& which, const Bound& b) {
  LiftedOps L;
  L.unit = [which](std::size_t c, std::size_t n) {
    Element e{std::vector<Rational>(n, Rational(0))};
    e.w[c] = Rational(1);
    return e;
  };
  // {f(x,y)} with weights: union for P, product counts for M, product measure for D
  L.op = [which](const Element& u, const Element& v, const std::vector<std::size_t>& f, std::size_t n) {
    Element out{std::vector<Rational>(n, Rational(0))};
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (u.w[x] == Rational(0) || v.w[y] == Rational(0)) continue;
        auto& slot = out.w[f[x * n + y]];
        if (which == "P") slot = Rational(1);
        else slot = slot + u.w[x] * v.w[y];
      }
    return out;
  };
  L.carrier = [which, b](std::size_t n) {
    std::vector<Element> out;
    std::vector<Rational> levels;
    if (which == "P") levels = {Rational(0), Rational(1)};
    if (which == "M")
      for (std::size_t k = 0; k <= b.maxMultiplicity; ++k) levels.emplace_back(static_cast<std::int64_t>(k));
    if (which == "D") levels = b.probGrid;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      Element e;
      Rational sum(0);
      for (auto i : idx) {
        e.w.push_back(levels[i]);
        sum = sum + levels[i];
      }
      if (which != "D" || sum == Rational(1)) out.push_back(e);
      std::size_t k = 0;
      while (k < n && ++idx[k] == levels.size()) idx[k++] = 0;
      if (k == n) break;
    }
    return out;
  };
  return L;
}

// Values of every term under every valuation of x, y, z, as interned ids.
template <class Elem, class Op>
std::vector<std::vector<int>> term_tables(const std::vector<TermNode>& terms, const std::vector<Elem>& carrier,
                                          const Elem& zero, Op op) {
  std::map<Elem, int> ids;
  std::vector<Elem> elems;
  auto intern = [&](const Elem& e) {
    auto [it, fresh] = ids.emplace(e, static_cast<int>(elems.size()));
    if (fresh) elems.push_back(e);
    return it->second;
  };
  for (const auto& c : carrier) intern(c);
  const int z = intern(zero);
  const std::size_t m = carrier.size(), vals = m * m * m;
  std::unordered_map<std::uint64_t, int> memo;
  std::vector<std::vector<int>> out(terms.size(), std::vector<int>(vals));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& nd = terms[t];
    for (std::size_t v = 0; v < vals; ++v) {
      if (nd.kind == 0) {
        std::size_t digit = v;
        for (std::size_t k = 0; k < nd.a; ++k) digit /= m;
        out[t][v] = static_cast<int>(digit % m);
      } else if (nd.kind == 1) {
        out[t][v] = z;
      } else {
        const int l = out[nd.a][v], r = out[nd.b][v];
        const auto key = (static_cast<std::uint64_t>(l) << 32) | static_cast<std::uint32_t>(r);
        auto it = memo.find(key);
        if (it == memo.end()) {
          const Elem lv = elems[l], rv = elems[r];
          it = memo.emplace(key, intern(op(lv, rv))).first;
        }
        out[t][v] = it->second;
      }
    }
  }
  return out;
}

Outcome oracle_soundness() {
  const Signature sig({{"•", 2, false}, {"0", 0, false}});
  std::vector<TermNode> nodes;
  std::vector<Term> terms;
  for (std::size_t k = 0; k < 3; ++k) {
    nodes.push_back({0, k});
    terms.push_back(Term::var(k));
  }
  nodes.push_back({1});
  terms.push_back(Term::constant("0"));
  const std::size_t depth0 = nodes.size();
  auto grow = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = 0; i < hi; ++i)
      for (std::size_t j = 0; j < hi; ++j) {
        if (i < lo && j < lo) continue;
        nodes.push_back({2, i, j});
        terms.push_back(Term::app("•", {terms[i], terms[j]}));
      }
  };
  grow(0, depth0);
  const std::size_t depth1 = nodes.size();
  grow(depth0, depth1);

  // one representative per equation up to renaming and orientation
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Equation> equations;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i; j < terms.size(); ++j) {
      auto e = normalize_context(Equation{{"x", "y", "z"}, terms[i], terms[j]});
      if (seen.insert(canonical_form(e)).second) {
        pairs.emplace_back(i, j);
        equations.push_back(std::move(e));
      }
    }

  // base algebras: every table for • and every choice of 0 on carriers of size 1 and 2
  struct Base {
    std::size_t n;
    std::vector<std::size_t> f;
    std::size_t zero;
  };
  std::vector<Base> bases;
  for (std::size_t n = 1; n <= 2; ++n) {
    const std::size_t cells = n * n;
    std::size_t tables = 1;
    for (std::size_t k = 0; k < cells; ++k) tables *= n;
    for (std::size_t code = 0; code < tables; ++code) {
      std::vector<std::size_t> f(cells);
      for (std::size_t k = 0, c = code; k < cells; ++k, c /= n) f[k] = c % n;
      for (std::size_t z = 0; z < n; ++z) bases.push_back({n, f, z});
    }
  }

  Bound b;
  Tally t;
  std::string summary;
  const std::map<std::string, MonadPtr> monads{{"P", fin_powerset()}, {"M", multiset()}, {"D", fin_distribution()}};
  for (const auto& [which, m] : monads) {
    const auto ops = lifted_ops(which, b);
    std::vector<std::vector<std::vector<int>>> base_tab, lift_tab;
    for (const auto& base : bases) {
      std::vector<std::size_t> plain(base.n);
      for (std::size_t k = 0; k < base.n; ++k) plain[k] = k;
      base_tab.push_back(term_tables(nodes, plain, base.zero,
                                     [&](std::size_t x, std::size_t y) { return base.f[x * base.n + y]; }));
      lift_tab.push_back(term_tables(nodes, ops.carrier(base.n), ops.unit(base.zero, base.n),
                                     [&](const Element& u, const Element& v) { return ops.op(u, v, base.f, base.n); }));
    }

    ProbeConfig probes;
    probes.carrier_sizes = {2};
    PreservationConfig cfg;
    cfg.probes = probes;
    cfg.model_search = false;
    cfg.residual_cache = std::make_shared<ResidualCache>();
    const auto profile = profile_monad(*m, probes);
    std::size_t syntactic = 0, residual = 0, confirmed_models = 0;
    for (std::size_t k = 0; k < equations.size(); ++k) {
      const auto& e = equations[k];
      const auto v = check_preservation(*m, profile, Theory{sig, {e}}, e, cfg);
      if (!preserved(v.status)) continue;
      (v.status == VerdictStatus::PreservedSyntactic ? syntactic : residual)++;
      const auto [i, j] = pairs[k];
      for (std::size_t a = 0; a < bases.size(); ++a) {
        if (base_tab[a][i] != base_tab[a][j]) continue;
        ++confirmed_models;
        t.add(lift_tab[a][i] == lift_tab[a][j],
              which + ": " + to_string(e) + " (" + verdict_name(v.status) + ") fails in a lifted model");
      }
    }
    summary += (summary.empty() ? "" : ", ") + which + " " + std::to_string(syntactic) + "+" +
               std::to_string(residual) + " preserved";
    t.add(syntactic + residual > 0, which + ": nothing preserved");
    (void)confirmed_models;
  }
  return t.outcome(std::to_string(equations.size()) + " equations, " + std::to_string(bases.size()) +
                   " base algebras; " + summary + " (syntactic+residual), all confirmed");
}

// --- 6: evaluator corpus ---------------------------------------------------

// Stage 1 oracle: distribute ';' over '+' down to a sum of words, then read off the set.
std::vector<std::vector<Value>> sum_of_words(const Value& t) {
  if (t.is(Kind::Leaf)) return {{t.child()}};
  const auto& op = t.name();
  if (op == "skip") return {{}};
  if (op == "abort") return {};
  auto l = sum_of_words(t[0]), r = sum_of_words(t[1]);
  if (op == "+") {
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  std::vector<std::vector<Value>> out;
  for (const auto& u : l)
    for (const auto& w : r) {
      auto uw = u;
      uw.insert(uw.end(), w.begin(), w.end());
      out.push_back(std::move(uw));
    }
  return out;
}

// Stage 2 oracle: push ⊕ to the top with the distributivity axioms, then
// normalize each ⊕-free branch as two monoids with absorption.
std::vector<std::pair<Rational, Value>> branches(const Value& t) {
  if (t.is(Kind::Leaf) || t.size() == 0) return {{Rational(1), t}};
  auto l = branches(t[0]), r = branches(t[1]);
  std::vector<std::pair<Rational, Value>> out;
  if (t.name() == "⊕") {
    const Rational lam = *t.param();
    for (auto& [w, x] : l) out.emplace_back(w * lam, x);
    for (auto& [w, x] : r) out.emplace_back(w * (Rational(1) - lam), x);
    return out;
  }
  for (const auto& [wl, x] : l)
    for (const auto& [wr, y] : r) out.emplace_back(wl * wr, Value::app(t.name(), std::nullopt, {x, y}));
  return out;
}

// A sum is a multiset of products; a product is a list of factors, each an
// atom or a sum of at least two products.
struct Sum;
using Factor = std::variant<std::string, std::shared_ptr<Sum>>;
struct Sum {
  std::vector<std::vector<Factor>> products;
};

Sum normal(const Value& t) {
  if (t.is(Kind::Leaf)) return Sum{std::vector<std::vector<Factor>>{std::vector<Factor>{t.child().name()}}};
  if (t.name() == "skip") return Sum{std::vector<std::vector<Factor>>(1)};
  if (t.name() == "abort") return Sum{};
  Sum l = normal(t[0]), r = normal(t[1]);
  if (t.name() == "+") {
    l.products.insert(l.products.end(), r.products.begin(), r.products.end());
    return l;
  }
  if (l.products.empty() || r.products.empty()) return Sum{};
  auto factors = [](Sum s) -> std::vector<Factor> {
    if (s.products.size() == 1) return s.products.front();
    return {std::make_shared<Sum>(std::move(s))};
  };
  auto p = factors(std::move(l));
  auto q = factors(std::move(r));
  p.insert(p.end(), q.begin(), q.end());
  // skip ; (x + y) is just the sum again
  if (p.size() == 1 && std::holds_alternative<std::shared_ptr<Sum>>(p.front())) return *std::get<std::shared_ptr<Sum>>(p.front());
  return Sum{{p}};
}

Value encode(const Sum& s) {
  std::vector<std::pair<Value, std::uint64_t>> entries;
  for (const auto& prod : s.products) {
    std::vector<Value> word;
    for (const auto& f : prod)
      word.push_back(std::holds_alternative<std::string>(f) ? Value::leaf(Value::atom(std::get<std::string>(f)))
                                                            : encode(*std::get<std::shared_ptr<Sum>>(f)));
    entries.emplace_back(Value::word(std::move(word)), 1);
  }
  return Value::bag(std::move(entries));
}

Value oracle(const Value& program, std::size_t stage) {
  if (stage == 1) {
    std::vector<Value> words;
    for (auto& w : sum_of_words(program)) words.push_back(Value::word(std::move(w)));
    return Value::set(std::move(words));
  }
  std::vector<std::pair<Value, Rational>> entries;
  for (const auto& [w, x] : branches(program))
    if (w != Rational(0)) entries.emplace_back(encode(normal(x)), w);
  return Value::dist(std::move(entries));
}

Outcome evaluator_corpus() {
  const auto& spec = pnk();
  Tally t;
  const std::vector<std::tuple<const char*, std::size_t, const char*>> fixed{
      {"(a + b); c", 1, "{ac, bc}\n"},
      {"a; abort", 1, "{}\n"},
      {"(a ⊕[1/2] b); c", 2, "⟨⟨ac⟩⟩: 1/2\n⟨⟨bc⟩⟩: 1/2\n"},
  };
  for (const auto& [program, stage, want] : fixed) {
    const auto got = pretty_lines(eval_program(spec, program, stage));
    t.add(got == want, std::string(program) + " gave " + got);
  }

  const std::vector<std::pair<const char*, std::size_t>> corpus{
      {"a ; (b + c)", 1},
      {"(a + b) ; (b + c)", 1},
      {"skip + a ; b", 1},
      {"a ; b ; c + a ; b", 1},
      {"(a + skip) ; (b + skip)", 1},
      {"abort + a", 1},
      {"(a + abort) ; b", 1},
      {"((a + b) ; c) + (a ; c)", 1},
      {"abort ; (a + b)", 1},
      {"c ; (a + b) ; c", 1},
      {"a ⊕[1/3] b", 2},
      {"(a ⊕[1/2] b) ; (c ⊕[1/2] a)", 2},
      {"a + (b ⊕[1/4] c)", 2},
      {"(a ⊕[1/2] b) + (a ⊕[1/2] b)", 2},
      {"(a + b) ; (c ⊕[3/4] skip)", 2},
      {"a ⊕[1/2] (b ⊕[1/3] c)", 2},
      {"abort ⊕[1/2] (a ; b)", 2},
      {"(a ; (b + c)) ⊕[2/3] a", 2},
      {"skip ⊕[1] a", 2},
      {"(a ⊕[0] b) ; c + a", 2},
  };
  Signature sig = full_signature();
  for (const auto& [program, stage] : corpus) {
    const Value got = eval_program(spec, program, stage);
    const Value want = oracle(parse_program(program, sig, spec.atoms, spec.precedence), stage);
    t.add(pretty_lines(got) == pretty_lines(want) && canonical(got) == canonical(want),
          std::string(program) + ": " + canonical(got) + " vs oracle " + canonical(want));
  }
  return t.outcome("3 reference programs and " + std::to_string(corpus.size()) +
                   " programs match the rewrite oracle byte for byte");
}

// --- 7: naturality ---------------------------------------------------------

Outcome naturality() {
  Bound b;
  Tally t;
  for (const auto& m : {fin_powerset(), multiset(), fin_distribution()}) {
    t.add(check_fubini_naturality(*m, b), m->name() + " ψ");
    for (const auto& c : check_monad_naturality(*m, b)) t.add(c, m->name());
  }
  const auto& stages = checked_stack().stages;
  for (const auto& st : stages) {
    Theory kept{st.input.signature, st.weakened.kept};
    const auto inner = quotient_monad(kept);
    const auto outer = native_monad(pnk().layers.at(st.index).normalizer);
    t.add(check_q_naturality(*inner, b), inner->name() + " q");
    t.add(check_rho_naturality(extend_to_rho(build_sigma_law(kept.signature, outer)), b), "stage " + std::to_string(st.index) + " ρ");
    t.add(check_law_naturality(QuotientLaw(inner, outer), b), "stage " + std::to_string(st.index) + " λ");
  }
  return t.outcome(std::to_string(t.checks) + " naturality squares over all maps between carriers of size <= 2");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"monad laws and monoidal diagrams", monad_suite},
      {"stage 1: words under sets", stage_one},
      {"stage 2: distributions over the idempotent semiring", stage_two},
      {"sets over sets", powerset_over_powerset},
      {"preservation verdicts against lifted algebras", oracle_soundness},
      {"evaluator corpus", evaluator_corpus},
      {"naturality", naturality},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("AC%zu %s  %s: %s [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
