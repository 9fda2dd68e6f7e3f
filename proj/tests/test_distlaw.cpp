#include <gtest/gtest.h>

#include "helpers.hpp"
#include "mlayers/distlaw.hpp"

using namespace mlayers;
using namespace mlayers::testing;

namespace {

QuotientPtr words() {
  static auto s = quotient_monad(template_theory(NormalizerKind::Monoid, default_roles()), NormalizerKind::Monoid);
  return s;
}

Value WV(std::vector<Value> xs) { return Value::word(std::move(xs)); }

const LawReport& report(const std::vector<LawReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.check == id) return r;
  throw std::runtime_error("no report " + id);
}

// Every way of picking one word from each set, concatenated.
Value expand(const Value& word_of_sets) {
  std::vector<std::vector<Value>> acc{{}};
  for (const auto& set : word_of_sets.items()) {
    std::vector<std::vector<Value>> next;
    for (const auto& prefix : acc)
      for (const auto& w : set.items()) {
        auto p = prefix;
        p.insert(p.end(), w.items().begin(), w.items().end());
        next.push_back(std::move(p));
      }
    acc = std::move(next);
  }
  std::vector<Value> out;
  for (auto& w : acc) out.push_back(WV(std::move(w)));
  return S(out);
}

}  // namespace

TEST(QuotientLaw, WordsOverSets) {
  QuotientLaw law(words(), fin_powerset());
  EXPECT_EQ(law.apply(WV({S({A("a")}), S({A("b"), A("c")})})), S({W({"a", "b"}), W({"a", "c"})}));
  EXPECT_EQ(law.apply(WV({})), S({WV({})}));
  EXPECT_EQ(law.apply(WV({S({A("a")}), S({})})), S({}));
  // oracle: elementwise expansion
  Value in = WV({S({A("a"), A("b")}), S({A("c")}), S({A("a"), A("c")})});
  std::vector<Value> as_words;
  for (const auto& s : in.items()) {
    std::vector<Value> ws;
    for (const auto& x : s.items()) ws.push_back(WV({x}));
    as_words.push_back(S(ws));
  }
  EXPECT_EQ(law.apply(in), expand(WV(as_words)));
}

TEST(QuotientLaw, AxiomsForWordsOverSets) {
  QuotientLaw law(words(), fin_powerset());
  LawConfig cfg;
  cfg.bound.maxSetSize = 16;
  auto rs = verify_distlaw(law, cfg);
  for (const auto& r : rs) EXPECT_TRUE(r.ok) << r.check << " " << r.fragment;
  // S(TX): words of length <= 2 over the 4 subsets of {a,b}
  EXPECT_EQ(report(rs, "DL1").inputs, 7u);
  EXPECT_EQ(report(rs, "DL2").inputs, 4u);
  EXPECT_EQ(report(rs, "DL3").inputs, 1u + 16 + 256);
  EXPECT_EQ(report(rs, "DL4").inputs, 1u + 21 + 441);
  EXPECT_TRUE(check_well_defined(law, cfg).ok);
}

TEST(QuotientLaw, CorruptedComponentIsCaught) {
  QuotientLaw good(words(), fin_powerset());
  const Value s1 = WV({S({A("a"), A("b")})});
  const Value s2 = WV({S({A("a")})});
  QuotientLaw bad(words(), fin_powerset(), [&](const Value& s) {
    if (s == s1) return good.apply(s2);
    if (s == s2) return good.apply(s1);
    return good.apply(s);
  });
  auto rs = verify_distlaw(bad, {});
  const auto& dl3 = report(rs, "DL3");
  EXPECT_FALSE(dl3.ok);
  ASSERT_TRUE(dl3.witness);
  EXPECT_NE(dl3.witness->lhs, dl3.witness->rhs);
}

TEST(QuotientLaw, RefusedWhenAnEquationIsNotPreserved) {
  auto th = template_theory(NormalizerKind::Semilattice, default_roles());
  auto s = quotient_monad(th, NormalizerKind::Semilattice);
  auto p = fin_powerset();
  auto verdicts = check_theory(*p, profile_monad(*p), th);
  try {
    (void)build_quotient_law(s, p, verdicts);
    FAIL() << "expected a refusal";
  } catch (const LawRefused& e) {
    EXPECT_NE(std::string(e.what()).find("p + p = p (FALSIFIED)"), std::string::npos) << e.what();
  }
}

TEST(QuotientLaw, DistributionsOverTwoMonoids) {
  auto th = template_theory(NormalizerKind::TwoMonoidsAbsorb, default_roles());
  auto s = quotient_monad(th, NormalizerKind::TwoMonoidsAbsorb);
  auto d = fin_distribution();
  auto verdicts = check_theory(*d, profile_monad(*d), th);
  LawConfig cfg;
  cfg.bound.probGrid = {R(0), R(1, 2), R(1)};
  auto built = build_quotient_law(s, d, verdicts, cfg);
  EXPECT_TRUE(built.well_defined.ok);
  for (const auto& r : verify_distlaw(built.law, cfg)) EXPECT_TRUE(r.ok) << r.check << " " << r.fragment;
}

TEST(Composite, UnitAndMultiplication) {
  auto cm = compose(QuotientLaw(words(), fin_powerset()));
  EXPECT_EQ(cm->unit(A("a")), S({W({"a"})}));
  // a set of words whose letters are sets of words
  Value inner1 = S({W({"a"}), W({"b"})});
  Value inner2 = S({W({"c"}), WV({})});
  Value v = S({WV({inner1, inner2}), WV({inner2})});
  // oracle: expand each word of sets, then union
  std::vector<Value> all;
  for (const auto& w : v.items()) {
    const Value e = expand(w);
    all.insert(all.end(), e.items().begin(), e.items().end());
  }
  EXPECT_EQ(cm->mult(v), S(all));
  for (const auto& x : cm->enumerate(atoms({"a", "b"}), {})) EXPECT_EQ(cm->mult(cm->unit(x)), x);
  for (const auto& r : verify_monad(*cm, {})) EXPECT_TRUE(r.ok) << r.check;
  EXPECT_TRUE(cm->inner_only());
}

TEST(Naturality, PsiQRhoLambda) {
  Bound b;
  b.probGrid = {R(0), R(1, 2), R(1)};
  for (auto t : {fin_powerset(), multiset(), fin_distribution()}) EXPECT_TRUE(check_fubini_naturality(*t, b).ok);
  for (auto kind : {NormalizerKind::Monoid, NormalizerKind::IdemSemiring, NormalizerKind::TwoMonoidsAbsorb})
    EXPECT_TRUE(check_q_naturality(*quotient_monad(template_theory(kind, default_roles()), kind), b).ok);
  auto rho = extend_to_rho(build_sigma_law(words()->theory().signature, fin_powerset()));
  EXPECT_TRUE(check_rho_naturality(rho, b).ok);
  EXPECT_TRUE(check_law_naturality(QuotientLaw(words(), fin_powerset()), b).ok);
}
