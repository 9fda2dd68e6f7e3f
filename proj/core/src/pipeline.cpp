#include "mlayers/pipeline.hpp"

#include <cmath>
#include <set>

#include "mlayers/render.hpp"

namespace mlayers {

namespace {

std::string var_name(std::size_t i) {
  static const char* pool[] = {"p", "q", "r", "s", "t", "u", "v", "w"};
  return i < 8 ? pool[i] : "x" + std::to_string(i);
}

std::optional<ParamExpr> param_of(const OpSymbol& op, const char* name) {
  if (!op.parameterized) return std::nullopt;
  return ParamExpr::var(name);
}

}  // namespace

std::vector<Equation> generate_distributivity(const Signature& inner, const Signature& outer) {
  std::vector<Equation> out;
  for (const auto& f : inner.ops()) {
    if (f.arity == 0) continue;
    const auto fp = param_of(f, "μ");
    for (const auto& g : outer.ops()) {
      const auto gp = param_of(g, "λ");
      for (std::size_t j = 0; j < f.arity; ++j) {
        // variables: the other positions of f first, then g's arguments
        std::vector<std::string> ctx;
        std::vector<Term> others;
        for (std::size_t i = 0; i + 1 < f.arity; ++i) {
          others.push_back(Term::var(ctx.size()));
          ctx.push_back(var_name(ctx.size()));
        }
        auto f_with = [&](Term at_j) {
          std::vector<Term> args;
          std::size_t k = 0;
          for (std::size_t i = 0; i < f.arity; ++i) args.push_back(i == j ? at_j : others[k++]);
          return Term::app(f.name, std::move(args), fp);
        };
        if (g.arity == 0) {
          Term c = Term::app(g.name, {}, gp);
          out.push_back(normalize_context(Equation{ctx, f_with(c), c}));
          continue;
        }
        std::vector<Term> ys;
        for (std::size_t i = 0; i < g.arity; ++i) {
          ys.push_back(Term::var(ctx.size()));
          ctx.push_back(var_name(ctx.size()));
        }
        std::vector<Term> distributed;
        for (const auto& y : ys) distributed.push_back(f_with(y));
        out.push_back(normalize_context(Equation{ctx, f_with(Term::app(g.name, ys, gp)),
                                                 Term::app(g.name, std::move(distributed), gp)}));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

StageSemantics::StageSemantics(QuotientPtr inner, QuotientPtr outer)
    : inner_(std::move(inner)),
      outer_(std::move(outer)),
      monad_(compose(QuotientLaw(inner_, outer_))),
      sig_(inner_->theory().signature.merged(outer_->theory().signature)) {}

StageSemantics::StageSemantics(QuotientPtr seed) : inner_(seed), monad_(seed), sig_(seed->theory().signature) {}

FiniteAlgebra StageSemantics::algebra(std::vector<Value> carrier) const {
  if (!outer_) return inner_->free_algebra(std::move(carrier));
  auto alg = lift_algebra(*outer_, inner_->theory().signature, inner_->free_algebra({}), std::move(carrier));
  for (const auto& op : outer_->theory().signature.ops()) {
    auto t = outer_;
    alg.set_op(op.name, [t, name = op.name](const std::optional<Rational>& p, std::span<const Value> args) {
      return t->apply(name, p, args);
    });
  }
  return alg;
}

Value StageSemantics::denote(const Value& term) const {
  if (!outer_) return inner_->q(term);
  const auto alg = algebra({});
  std::function<Value(const Value&)> go = [&](const Value& t) -> Value {
    if (t.is(Kind::Leaf)) return monad_->unit(t.child());
    std::vector<Value> args;
    for (const auto& a : t.items()) args.push_back(go(a));
    return alg.apply(t.name(), t.param(), args);
  };
  return go(term);
}

namespace {

std::vector<Bound> fallbacks(const Bound& b) {
  std::vector<Bound> out{b};
  for (auto& nb : nested_bounds(b)) out.push_back(nb);
  return out;
}

}  // namespace

std::vector<GeneratedCheck> verify_generated_axioms(const StageSemantics& sem, std::span<const Equation> eqs,
                                                    std::string_view origin, const std::vector<Value>& atoms,
                                                    const Bound& b, std::size_t max_valuations) {
  std::vector<GeneratedCheck> out;
  for (const auto& e : eqs) {
    const double instances = std::max<double>(1, static_cast<double>(param_instances(e, b.probGrid).size()));
    const double per = static_cast<double>(max_valuations) / instances;
    const auto n = e.context.size();
    const auto limit = n == 0 ? std::size_t{64}
                              : std::max<std::size_t>(2, static_cast<std::size_t>(std::pow(per, 1.0 / n)));
    auto pool = enumerate_sampled(sem.monad(), atoms, fallbacks(b), std::max<std::size_t>(limit, 2000));
    std::vector<Value> carrier;
    if (pool.size() <= limit) carrier = std::move(pool);
    else
      for (std::size_t i = 0; i < limit; ++i) carrier.push_back(pool[i * pool.size() / limit]);  // evenly spread
    const auto size = carrier.size();
    auto alg = sem.algebra(std::move(carrier));
    out.push_back(GeneratedCheck{std::string(origin), e, holds(alg, e, b.probGrid), size});
  }
  return out;
}

// ---------------------------------------------------------------------------

int CompositionReport::exit_code() const noexcept {
  bool dropped = false;
  for (const auto& s : stages) {
    if (!s.verified()) return 2;
    dropped = dropped || !s.weakened.dropped.empty();
  }
  return dropped ? 1 : 0;
}

void validate_stack(std::span<const LayerSpec> layers) {
  if (layers.empty() || layers.front().role != LayerRole::InnerSeed)
    throw Error("at least one inner seed required, listed first");
  if (layers.size() < 2) throw Error("at least one outer layer required");
  std::set<std::string> names;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i > 0 && layers[i].role == LayerRole::InnerSeed)
      throw Error("layer '" + layers[i].name + "': only the first layer may be the inner seed");
    for (const auto& op : layers[i].theory.signature.ops())
      if (!names.insert(op.name).second)
        throw SignatureError("operation '" + op.name + "' is declared by more than one layer");
  }
}

QuotientPtr layer_monad(const LayerSpec& layer, const Bound& b) {
  auto s = quotient_monad(layer.theory, layer.normalizer, b);
  if (layer.role == LayerRole::Outer && !native_monad(layer.normalizer))
    throw Error("outer layer '" + layer.name + "' must realize a built-in commutative monad, not " +
                normalizer_name(layer.normalizer));
  if (layer.role == LayerRole::Outer && s->inner_only())
    throw InnerOnlyMonad("outer layer '" + layer.name + "' realizes " + s->name() + ", which is not commutative");
  return s;
}

namespace {

std::string counts(const WeakenedTheory& w) {
  return std::to_string(w.kept.size()) + " kept, " + std::to_string(w.dropped.size()) + " dropped, " +
         std::to_string(w.generated.size()) + " generated";
}

CompositionReport run(const std::vector<LayerSpec>& layers, const PipelineConfig& cfg, bool laws) {
  validate_stack(layers);
  CompositionReport report;
  report.layers = layers;
  Theory current = layers.front().theory;
  // the seed's own normal forms must exist
  (void)layer_monad(layers.front(), cfg.bound);

  for (std::size_t i = 1; i < layers.size(); ++i) {
    const auto& layer = layers[i];
    StageReport st;
    st.index = i;
    st.layer = layer.name;
    st.input = current;
    auto t = layer_monad(layer, cfg.bound);
    st.outer_monad = t->name();
    st.profile = profile_monad(*t, cfg.preservation.probes);
    if (!st.profile.symmetric.holds())
      throw Error("outer layer '" + layer.name + "' fails the symmetry probe");

    st.verdicts = check_theory(*t, st.profile, current, cfg.preservation);
    st.weakened.signature = current.signature.merged(layer.theory.signature);
    std::vector<Verdict> kept_verdicts;
    for (const auto& v : st.verdicts) {
      const bool keep = preserved(v.status) || (cfg.keep_unknown && v.status == VerdictStatus::Unknown);
      if (keep) {
        st.weakened.kept.push_back(v.equation);
        if (preserved(v.status)) kept_verdicts.push_back(v);
        else st.retained_unknown = true;
      } else {
        st.weakened.dropped.push_back({v.equation, v});
      }
    }
    st.weakened.generated = generate_distributivity(current.signature, layer.theory.signature);

    Theory inner{current.signature, st.weakened.kept};
    auto rec = recognize(inner);
    st.inner_kind = rec ? std::optional(rec->kind) : std::nullopt;
    auto s = quotient_monad(inner, cfg.bound);
    st.inner_monad = s->name();
    st.narrative.push_back("stage " + std::to_string(i) + ": " + t->name() + " over " + s->name() + " (" +
                           counts(st.weakened) + ")");
    for (const auto& d : st.weakened.dropped)
      st.narrative.push_back("dropped " + to_string(d.equation) + ": " + verdict_name(d.verdict.status));
    if (st.retained_unknown) st.narrative.push_back("UNKNOWN equations retained: the composite is UNVERIFIED");

    if (laws) {
      auto built = build_quotient_law(s, t, kept_verdicts, cfg.laws);
      st.law_reports.push_back(built.well_defined);
      for (auto& r : verify_distlaw(built.law, cfg.laws)) st.law_reports.push_back(std::move(r));
      for (auto& r : verify_monad(CompositeMonad(built.law), cfg.laws)) st.law_reports.push_back(std::move(r));
      StageSemantics sem(s, t);
      auto add = [&](std::span<const Equation> eqs, std::string_view origin) {
        for (auto& c : verify_generated_axioms(sem, eqs, origin, cfg.atoms, cfg.bound))
          st.axiom_checks.push_back(std::move(c));
      };
      add(st.weakened.kept, "kept");
      add(layer.theory.equations, "outer");
      add(st.weakened.generated, "generated");
      for (const auto& r : st.law_reports)
        if (!r.ok) {
          st.alarm = true;
          st.narrative.push_back("ALARM: " + r.check + " fails on " + r.fragment);
        }
      for (const auto& c : st.axiom_checks)
        if (!c.result.holds) {
          st.alarm = true;
          st.narrative.push_back("ALARM: " + c.origin + " axiom " + to_string(c.equation) +
                                 " fails in the composite");
        }
    }

    Theory next{st.weakened.signature, st.weakened.kept};
    next.equations.insert(next.equations.end(), layer.theory.equations.begin(), layer.theory.equations.end());
    next.equations.insert(next.equations.end(), st.weakened.generated.begin(), st.weakened.generated.end());
    st.output = next;
    current = std::move(next);
    report.stages.push_back(std::move(st));
  }
  report.final_theory = current;
  return report;
}

}  // namespace

CompositionReport check_stack(const std::vector<LayerSpec>& layers, const PipelineConfig& cfg) {
  return run(layers, cfg, false);
}

CompositionReport compose_stack(const std::vector<LayerSpec>& layers, const PipelineConfig& cfg) {
  return run(layers, cfg, cfg.verify_laws);
}

StageSemantics stage_semantics(const CompositionReport& report, std::size_t stage, const Bound& b) {
  if (stage > report.stages.size())
    throw Error("stage " + std::to_string(stage) + " does not exist; the stack has " +
                std::to_string(report.stages.size()) + " outer layer(s)");
  if (stage == 0) return StageSemantics(layer_monad(report.layers.front(), b));
  const auto& st = report.stages[stage - 1];
  Theory inner{st.input.signature, st.weakened.kept};
  return StageSemantics(quotient_monad(inner, b), layer_monad(report.layers[stage], b));
}

}  // namespace mlayers
