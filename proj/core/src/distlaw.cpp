#include "mlayers/distlaw.hpp"

#include <unordered_map>

#include "mlayers/render.hpp"

namespace mlayers {

QuotientLaw::QuotientLaw(QuotientPtr inner, MonadPtr outer)
    : inner_(std::move(inner)),
      outer_(std::move(outer)),
      rho_(extend_to_rho(build_sigma_law(inner_->theory().signature, outer_))) {}

QuotientLaw::QuotientLaw(QuotientPtr inner, MonadPtr outer, Fn apply)
    : inner_(std::move(inner)),
      outer_(std::move(outer)),
      rho_(extend_to_rho(build_sigma_law(inner_->theory().signature, outer_))),
      override_(std::move(apply)) {}

Value QuotientLaw::canonical_apply(const Value& s) const {
  const auto& q = *inner_;
  return outer_->map([&](const Value& term) { return q.q(term); }, rho_.apply(q.representative(s)));
}

namespace {

std::vector<Bound> fallbacks(const Bound& b) {
  std::vector<Bound> out{b};
  for (auto& nb : nested_bounds(b)) out.push_back(nb);
  return out;
}

std::vector<Value> fit(const Monad& m, std::span<const Value> base, const Bound& b, std::size_t limit) {
  return enumerate_sampled(m, base, fallbacks(b), limit);
}

std::vector<std::vector<Value>> singles(const std::vector<Value>& xs) {
  std::vector<std::vector<Value>> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back({x});
  return out;
}

std::string frag(const QuotientLaw& law, const LawConfig& cfg, std::size_t n) {
  return law.outer()->name() + " over " + law.inner()->name() + " on |X|=" + std::to_string(cfg.carrier.size()) +
         " " + cfg.bound.describe() + " (" + std::to_string(n) + " inputs)";
}

}  // namespace

LawReport check_well_defined(const QuotientLaw& law, const LawConfig& cfg) {
  const auto& t = *law.outer();
  const auto& s = *law.inner();
  auto leaves = t.enumerate(cfg.carrier, shrunk(cfg.bound));
  if (leaves.size() > 3) leaves.resize(3);
  Bound tb = shrunk(cfg.bound);
  tb.maxTermDepth = 2;
  tb.ceiling = std::max<std::size_t>(cfg.bound.ceiling, 200000);
  std::vector<Value> terms;
  try {
    terms = enumerate_terms(s.theory().signature, leaves, tb);
  } catch (const BoundExceeded&) {
    tb.maxTermDepth = 1;
    terms = enumerate_terms(s.theory().signature, leaves, tb);
  }
  LawReport out{"WELL_DEFINED", true, 0,
                "representative pairs among " + std::to_string(terms.size()) + " terms of depth <= " +
                    std::to_string(tb.maxTermDepth) + " over " + std::to_string(leaves.size()) + " " + t.name() +
                    " values",
                std::nullopt};
  std::unordered_map<Value, std::pair<Value, Value>, ValueHash> seen;  // class -> (term, lambda image)
  for (const auto& term : terms) {
    ++out.inputs;
    Value cls = s.q(term);
    Value image = t.map([&](const Value& x) { return s.q(x); }, law.rho().apply(term));
    auto [it, fresh] = seen.try_emplace(cls, term, image);
    if (!fresh && it->second.second != image) {
      out.ok = false;
      out.witness = DiagramWitness{{it->second.first, term}, it->second.second, image};
      return out;
    }
  }
  return out;
}

BuiltLaw build_quotient_law(QuotientPtr inner, MonadPtr outer, std::span<const Verdict> verdicts,
                            const LawConfig& cfg) {
  std::string failing;
  for (const auto& v : verdicts)
    if (!preserved(v.status)) failing += "\n  " + to_string(v.equation) + " (" + verdict_name(v.status) + ")";
  if (!failing.empty())
    throw LawRefused("no distributive law of " + outer->name() + " over " + inner->name() +
                     ": equations not preserved:" + failing);
  QuotientLaw law(std::move(inner), std::move(outer));
  auto wd = check_well_defined(law, cfg);
  return BuiltLaw{std::move(law), std::move(wd)};
}

// ---------------------------------------------------------------------------

std::string CompositeMonad::name() const { return law_.outer()->name() + "∘" + law_.inner()->name(); }

Value CompositeMonad::unit(const Value& x) const { return law_.outer()->unit(law_.inner()->unit(x)); }

Value CompositeMonad::map(const ElemFn& f, const Value& tx) const {
  const auto& s = *law_.inner();
  return law_.outer()->map([&](const Value& sx) { return s.map(f, sx); }, tx);
}

Value CompositeMonad::mult(const Value& ttx) const {
  const auto& t = *law_.outer();
  const auto& s = *law_.inner();
  Value swapped = t.mult(t.map([&](const Value& stsx) { return law_.apply(stsx); }, ttx));
  return t.map([&](const Value& ssx) { return s.mult(ssx); }, swapped);
}

Value CompositeMonad::fubini(const Value& tx, const Value& ty) const {
  if (inner_only()) throw InnerOnlyMonad(name() + " has no Fubini transformation");
  const auto& s = *law_.inner();
  return law_.outer()->map([&](const Value& p) { return s.fubini(p[0], p[1]); }, law_.outer()->fubini(tx, ty));
}

bool CompositeMonad::inner_only() const { return law_.outer()->inner_only() || law_.inner()->inner_only(); }

std::vector<Value> CompositeMonad::enumerate(std::span<const Value> carrier, const Bound& b) const {
  auto inner = law_.inner()->enumerate(carrier, b);
  return law_.outer()->enumerate(inner, b);
}

CompositePtr compose(const QuotientLaw& law) { return std::make_shared<CompositeMonad>(law); }

// ---------------------------------------------------------------------------

std::vector<LawReport> verify_distlaw(const QuotientLaw& law, const LawConfig& cfg) {
  const auto& t = *law.outer();
  const auto& s = *law.inner();
  const auto& b = cfg.bound;
  auto lam = [&](const Value& v) { return law.apply(v); };
  std::vector<LawReport> out;

  auto sx = fit(s, cfg.carrier, b, cfg.max_inputs);
  out.push_back(check_diagram(
      "DL1", frag(law, cfg, sx.size()), singles(sx),
      [&](auto in) { return lam(s.map([&](const Value& x) { return t.unit(x); }, in[0])); },
      [&](auto in) { return t.unit(in[0]); }));

  auto tx = fit(t, cfg.carrier, b, 200);
  out.push_back(check_diagram(
      "DL2", frag(law, cfg, tx.size()), singles(tx), [&](auto in) { return lam(s.unit(in[0])); },
      [&](auto in) { return t.map([&](const Value& x) { return s.unit(x); }, in[0]); }));

  auto ttx = fit(t, tx, b, 200);
  auto sttx = fit(s, ttx, b, cfg.max_inputs);
  out.push_back(check_diagram(
      "DL3", frag(law, cfg, sttx.size()), singles(sttx),
      [&](auto in) { return lam(s.map([&](const Value& x) { return t.mult(x); }, in[0])); },
      [&](auto in) { return t.mult(t.map(lam, lam(in[0]))); }));

  auto stx = fit(s, tx, b, 64);
  auto sstx = fit(s, stx, b, cfg.max_inputs);
  out.push_back(check_diagram(
      "DL4", frag(law, cfg, sstx.size()), singles(sstx), [&](auto in) { return lam(s.mult(in[0])); },
      [&](auto in) {
        return t.map([&](const Value& x) { return s.mult(x); }, lam(s.map(lam, in[0])));
      }));

  auto nat = check_law_naturality(law, b);
  nat.check = "NATURALITY";
  out.push_back(std::move(nat));
  return out;
}

std::vector<LawReport> verify_monad(const CompositeMonad& cm, const LawConfig& cfg) {
  std::optional<BoundExceeded> last;
  // the full carrier first, then its first element alone
  for (std::size_t n = cfg.carrier.size(); n >= 1; n = n > 1 ? 1 : 0) {
    const std::span<const Value> carrier(cfg.carrier.data(), n);
    for (const auto& b : fallbacks(cfg.bound)) {
      try {
        auto laws = check_monad_laws(cm, carrier, b);
        for (auto& l : laws) l.check = "MONAD_LAWS/" + l.check;
        return laws;
      } catch (const BoundExceeded& e) {
        last = e;
      }
    }
  }
  throw *last;
}

// ---------------------------------------------------------------------------

LawReport check_law_naturality(const QuotientLaw& law, const Bound& b, std::size_t max_size) {
  const auto& t = *law.outer();
  const auto& s = *law.inner();
  LawReport out{"lambda-naturality", true, 0,
                "functions between carriers of size <= " + std::to_string(max_size), std::nullopt};
  for (const auto& f : small_functions(max_size)) {
    ElemFn fn = [&](const Value& x) { return f(x); };
    auto tx = fit(t, f.domain, b, 50);
    auto stx = fit(s, tx, b, 500);
    auto r = check_diagram(
        "lambda-naturality", "", singles(stx),
        [&](auto in) { return t.map([&](const Value& sx) { return s.map(fn, sx); }, law.apply(in[0])); },
        [&](auto in) { return law.apply(s.map([&](const Value& v) { return t.map(fn, v); }, in[0])); });
    out.inputs += r.inputs;
    if (!r.ok) {
      out.ok = false;
      out.witness = r.witness;
      out.fragment += "; f=" + f.describe();
      return out;
    }
  }
  return out;
}

LawReport check_rho_naturality(const RhoLaw& rho, const Bound& b, std::size_t max_size) {
  const auto& t = *rho.sigma().outer();
  LawReport out{"rho-naturality", true, 0, "functions between carriers of size <= " + std::to_string(max_size),
                std::nullopt};
  Bound tb = shrunk(b);
  tb.maxTermDepth = 2;
  for (const auto& f : small_functions(max_size)) {
    ElemFn fn = [&](const Value& x) { return f(x); };
    ElemFn tfn = [&](const Value& v) { return t.map(fn, v); };
    auto leaves = fit(t, f.domain, b, 50);
    if (leaves.size() > 3) leaves.resize(3);
    std::vector<Value> terms;
    try {
      terms = enumerate_terms(rho.sigma().signature(), leaves, tb);
    } catch (const BoundExceeded&) {
      Bound shallow = tb;
      shallow.maxTermDepth = 1;
      terms = enumerate_terms(rho.sigma().signature(), leaves, shallow);
    }
    auto r = check_diagram(
        "rho-naturality", "", singles(terms),
        [&](auto in) { return t.map([&](const Value& term) { return map_leaves(term, fn); }, rho.apply(in[0])); },
        [&](auto in) { return rho.apply(map_leaves(in[0], tfn)); });
    out.inputs += r.inputs;
    if (!r.ok) {
      out.ok = false;
      out.witness = r.witness;
      out.fragment += "; f=" + f.describe();
      return out;
    }
  }
  return out;
}

LawReport check_q_naturality(const QuotientMonad& s, const Bound& b, std::size_t max_size) {
  LawReport out{"q-naturality", true, 0, "functions between carriers of size <= " + std::to_string(max_size),
                std::nullopt};
  Bound tb = shrunk(b);
  tb.maxTermDepth = 2;
  for (const auto& f : small_functions(max_size)) {
    ElemFn fn = [&](const Value& x) { return f(x); };
    auto terms = enumerate_terms(s.theory().signature, f.domain, tb);
    auto r = check_diagram(
        "q-naturality", "", singles(terms), [&](auto in) { return s.map(fn, s.q(in[0])); },
        [&](auto in) { return s.q(map_leaves(in[0], fn)); });
    out.inputs += r.inputs;
    if (!r.ok) {
      out.ok = false;
      out.witness = r.witness;
      out.fragment += "; f=" + f.describe();
      return out;
    }
  }
  return out;
}

}  // namespace mlayers
