#include <gtest/gtest.h>

#include "helpers.hpp"
#include "mlayers/pipeline.hpp"
#include "mlayers/render.hpp"

using namespace mlayers;
using namespace mlayers::testing;

namespace {

LayerSpec layer(std::string name, NormalizerKind k, LayerRole role, const OpRoles& roles = default_roles()) {
  return LayerSpec{std::move(name), template_theory(k, roles), k, role};
}

std::vector<LayerSpec> probnetkat() {
  return {layer("seq", NormalizerKind::Monoid, LayerRole::InnerSeed),
          layer("choice", NormalizerKind::Semilattice, LayerRole::Outer),
          layer("prob", NormalizerKind::Convex, LayerRole::Outer)};
}

PipelineConfig fast() {
  PipelineConfig cfg;
  cfg.laws.bound.probGrid = {R(0), R(1, 2), R(1)};
  cfg.bound.probGrid = {R(0), R(1, 2), R(1)};
  return cfg;
}

Term P(const std::string& op, const char* lam, Term a, Term b) {
  return Term::app(op, {std::move(a), std::move(b)}, ParamExpr::var(lam));
}

const CompositionReport& composed() {
  static const CompositionReport r = compose_stack(probnetkat(), fast());
  return r;
}

Value leaf(const char* x) { return Value::leaf(A(x)); }
Value app(const char* op, Value a, Value b, std::optional<Rational> p = std::nullopt) {
  return Value::app(op, p, {std::move(a), std::move(b)});
}

}  // namespace

TEST(Generate, DistributivityOverBinaryAndConstant) {
  auto inner = template_theory(NormalizerKind::Monoid, default_roles()).signature;
  auto outer = template_theory(NormalizerKind::Semilattice, default_roles()).signature;
  auto eqs = generate_distributivity(inner, outer);
  std::vector<std::string> text;
  for (const auto& e : eqs) text.push_back(to_string(e));
  EXPECT_EQ(text, (std::vector<std::string>{"(q + r) ; p = (q ; p) + (r ; p)", "p ; (q + r) = (p ; q) + (p ; r)",
                                            "abort ; p = abort", "p ; abort = abort"}));
}

TEST(Generate, ParameterizedOuterOperation) {
  auto inner = template_theory(NormalizerKind::CommMonoid, default_roles()).signature;
  auto outer = template_theory(NormalizerKind::Convex, default_roles()).signature;
  auto eqs = generate_distributivity(inner, outer);
  ASSERT_EQ(eqs.size(), 2u);
  EXPECT_EQ(to_string(eqs[0]), "(q ⊕[λ] r) + p = (q + p) ⊕[λ] (r + p)");
  EXPECT_EQ(to_string(eqs[1]), "p + (q ⊕[λ] r) = (p + q) ⊕[λ] (p + r)");
}

TEST(Stack, Validation) {
  auto layers = probnetkat();
  EXPECT_THROW(validate_stack(std::span(layers).subspan(1)), Error);
  EXPECT_THROW(validate_stack(std::span(layers).first(1)), Error);
  auto dup = layers;
  dup[2] = layer("again", NormalizerKind::Semilattice, LayerRole::Outer);
  EXPECT_THROW(validate_stack(dup), SignatureError);
  auto words_outside = layers;
  words_outside[1] = layer("w", NormalizerKind::Monoid, LayerRole::Outer,
                           OpRoles{"*", "one", "", "", ""});
  EXPECT_THROW((void)compose_stack(words_outside, fast()), Error);
}

TEST(Pipeline, StageOneIsTheIdempotentSemiring) {
  const auto& st = composed().stages.at(0);
  EXPECT_TRUE(st.weakened.dropped.empty());
  EXPECT_EQ(st.weakened.kept.size(), 3u);
  EXPECT_EQ(st.weakened.generated.size(), 4u);
  EXPECT_EQ(st.output.equations.size(), 12u);
  auto rec = recognize(st.output);
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->kind, NormalizerKind::IdemSemiring);
  EXPECT_TRUE(st.verified());
  for (const auto& r : st.law_reports) EXPECT_TRUE(r.ok) << r.check;
  for (const auto& c : st.axiom_checks) EXPECT_TRUE(c.result.holds) << to_string(c.equation);
}

TEST(Pipeline, StageTwoMatchesTheHandWrittenAxioms) {
  const auto& st = composed().stages.at(1);
  ASSERT_EQ(st.weakened.dropped.size(), 3u);
  std::vector<std::string> dropped;
  for (const auto& d : st.weakened.dropped) {
    dropped.push_back(to_string(d.equation));
    EXPECT_EQ(d.verdict.status, VerdictStatus::Falsified);
  }
  EXPECT_EQ(dropped, (std::vector<std::string>{"p + p = p", "(q + r) ; p = (q ; p) + (r ; p)",
                                               "p ; (q + r) = (p ; q) + (p ; r)"}));
  ASSERT_TRUE(st.inner_kind);
  EXPECT_EQ(*st.inner_kind, NormalizerKind::TwoMonoidsAbsorb);

  const std::string sq = ";", pl = "+", ch = "⊕";
  std::vector<Equation> expected{
      E({"p"}, B(sq, V(0), C("skip")), V(0)),
      E({"p"}, B(sq, C("skip"), V(0)), V(0)),
      E({"p", "q", "r"}, B(sq, B(sq, V(0), V(1)), V(2)), B(sq, V(0), B(sq, V(1), V(2)))),
      E({"p"}, B(pl, V(0), C("abort")), V(0)),
      E({"p"}, B(pl, C("abort"), V(0)), V(0)),
      E({"p", "q"}, B(pl, V(0), V(1)), B(pl, V(1), V(0))),
      E({"p", "q", "r"}, B(pl, B(pl, V(0), V(1)), V(2)), B(pl, V(0), B(pl, V(1), V(2)))),
      E({"p"}, B(sq, V(0), C("abort")), C("abort")),
      E({"p"}, B(sq, C("abort"), V(0)), C("abort")),
  };
  using Op = ParamExpr::Op;
  const auto lam = ParamExpr::var("a"), tau = ParamExpr::var("b"), one = ParamExpr::constant(R(1));
  const auto outer = ParamExpr::binary(Op::Add, lam, ParamExpr::binary(Op::Mul, ParamExpr::binary(Op::Sub, one, lam), tau));
  auto mix = [&](ParamExpr e, Term x, Term y) { return Term::app(ch, {std::move(x), std::move(y)}, std::move(e)); };
  expected.push_back(E({"p"}, P(ch, "a", V(0), V(0)), V(0)));
  expected.push_back(E({"p", "q"}, P(ch, "a", V(0), V(1)), mix(ParamExpr::binary(Op::Sub, one, lam), V(1), V(0))));
  expected.push_back(E({"p", "q", "r"}, mix(lam, V(0), mix(tau, V(1), V(2))),
                       mix(outer, mix(ParamExpr::binary(Op::Div, lam, outer), V(0), V(1)), V(2))));
  for (const auto& op : {sq, pl}) {
    expected.push_back(E({"p", "q", "r"}, B(op, V(0), P(ch, "a", V(1), V(2))),
                         P(ch, "a", B(op, V(0), V(1)), B(op, V(0), V(2)))));
    expected.push_back(E({"p", "q", "r"}, B(op, P(ch, "a", V(0), V(1)), V(2)),
                         P(ch, "a", B(op, V(0), V(2)), B(op, V(1), V(2)))));
  }
  ASSERT_EQ(st.output.equations.size(), 16u);
  EXPECT_TRUE(same_equations(st.output.equations, expected));
  EXPECT_TRUE(st.verified()) << st.narrative.back();
  EXPECT_EQ(composed().exit_code(), 1);
}

TEST(Pipeline, IdempotencyUnderDistributionCarriesItsWitness) {
  const auto& st = composed().stages.at(1);
  const auto& v = st.weakened.dropped.front().verdict;
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(v.counterexample->carrier.size(), 2u);
  bool gap = false;
  for (const auto& line : v.evidence) gap = gap || line.find("gap 1/4 vs 0") != std::string::npos;
  EXPECT_TRUE(gap);
}

TEST(Pipeline, PowersetOverPowersetDropsIdempotency) {
  OpRoles inner = default_roles();
  OpRoles outer{"", "", "∪", "∅", ""};
  std::vector<LayerSpec> stack{layer("inner", NormalizerKind::Semilattice, LayerRole::InnerSeed, inner),
                               layer("outer", NormalizerKind::Semilattice, LayerRole::Outer, outer)};
  auto report = compose_stack(stack, fast());
  const auto& st = report.stages.at(0);
  ASSERT_EQ(st.weakened.dropped.size(), 1u);
  EXPECT_EQ(to_string(st.weakened.dropped[0].equation), "p + p = p");
  EXPECT_TRUE(st.weakened.dropped[0].verdict.counterexample);
  EXPECT_EQ(*st.inner_kind, NormalizerKind::CommMonoid);
  EXPECT_EQ(report.exit_code(), 1);

  // with the full theory the law is refused
  auto p = fin_powerset();
  auto verdicts = check_theory(*p, profile_monad(*p), stack[0].theory);
  EXPECT_THROW((void)build_quotient_law(quotient_monad(stack[0].theory), p, verdicts), LawRefused);
}

TEST(Pipeline, CheckSkipsTheLaws) {
  auto report = check_stack(probnetkat(), fast());
  ASSERT_EQ(report.stages.size(), 2u);
  for (const auto& st : report.stages) {
    EXPECT_TRUE(st.law_reports.empty());
    EXPECT_TRUE(st.axiom_checks.empty());
  }
  EXPECT_TRUE(same_equations(report.final_theory.equations, composed().final_theory.equations));
}

TEST(Semantics, Denotations) {
  auto s1 = stage_semantics(composed(), 1);
  const Value ac = s1.denote(app(";", leaf("a"), leaf("c")));
  EXPECT_EQ(s1.denote(app(";", app("+", leaf("a"), leaf("b")), leaf("c"))),
            S({W({"a", "c"}), W({"b", "c"})}));
  EXPECT_EQ(s1.denote(app(";", leaf("a"), Value::app("abort", std::nullopt, {}))), S({}));
  EXPECT_EQ(ac, S({W({"a", "c"})}));

  auto s2 = stage_semantics(composed(), 2);
  Theory kept{composed().stages[1].input.signature, composed().stages[1].weakened.kept};
  auto inner = quotient_monad(kept);
  const Value got = s2.denote(app(";", app("⊕", leaf("a"), leaf("b"), R(1, 2)), leaf("c")));
  const Value want = D({{inner->q(app(";", leaf("a"), leaf("c"))), R(1, 2)},
                        {inner->q(app(";", leaf("b"), leaf("c"))), R(1, 2)}});
  EXPECT_EQ(got, want) << pretty(got);
}
