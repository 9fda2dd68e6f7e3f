#include <gtest/gtest.h>

#include "helpers.hpp"
#include "mlayers/algebra.hpp"
#include "mlayers/normalizer.hpp"

using namespace mlayers;
using namespace mlayers::testing;

namespace {

Value L(const char* x) { return Value::leaf(A(x)); }
Value op(const char* name, Value a, Value b) { return Value::app(name, std::nullopt, {std::move(a), std::move(b)}); }
Value k(const char* name) { return Value::app(name, std::nullopt, {}); }

QuotientPtr make(NormalizerKind kind) { return quotient_monad(template_theory(kind, default_roles()), kind); }

}  // namespace

TEST(Quotient, MonoidAssociativityCollapses) {
  auto s = make(NormalizerKind::Monoid);
  Value a = op(";", L("x"), op(";", L("y"), L("z")));
  Value b = op(";", op(";", L("x"), L("y")), L("z"));
  EXPECT_EQ(s->q(a), W({"x", "y", "z"}));
  EXPECT_EQ(s->q(a), s->q(b));
}

TEST(Quotient, SemilatticeAndConvex) {
  auto s = make(NormalizerKind::Semilattice);
  EXPECT_EQ(s->q(op("+", L("x"), op("+", L("x"), L("y")))), S({A("x"), A("y")}));
  auto c = make(NormalizerKind::Convex);
  Value half = Value::app("⊕", R(1, 2), {L("x"), Value::app("⊕", R(1, 2), {L("x"), L("y")})});
  // oracle: x gets 1/2 + 1/2*1/2, y gets 1/2*1/2
  EXPECT_EQ(c->q(half), D({{A("x"), R(1, 2) + R(1, 4)}, {A("y"), R(1, 4)}}));
}

TEST(Quotient, TwoMonoidsNormalForms) {
  auto s = make(NormalizerKind::TwoMonoidsAbsorb);
  // (a + b) ; c stays a product whose first factor is a sum, since ; does not distribute
  Value t = op(";", op("+", L("a"), L("b")), L("c"));
  Value nf = s->q(t);
  ASSERT_EQ(nf.size(), 1u);
  EXPECT_EQ(nf[0].size(), 2u);
  EXPECT_NE(nf, s->q(op("+", op(";", L("a"), L("c")), op(";", L("b"), L("c")))));
  EXPECT_EQ(s->q(op(";", L("a"), k("abort"))), Value::bag({}));
  EXPECT_EQ(s->q(op(";", op("+", L("a"), L("b")), k("skip"))), s->q(op("+", L("b"), L("a"))));
  EXPECT_NE(s->q(op("+", L("a"), L("a"))), s->q(L("a")));
}

TEST(Quotient, FreeAlgebrasSatisfyTheirAxioms) {
  Bound b;
  b.maxSetSize = 2;
  b.maxWordLen = 2;
  for (auto kind : {NormalizerKind::Monoid, NormalizerKind::Semilattice, NormalizerKind::CommMonoid,
                    NormalizerKind::Convex, NormalizerKind::IdemSemiring, NormalizerKind::Semiring,
                    NormalizerKind::TwoMonoidsAbsorb}) {
    auto s = make(kind);
    Bound eb = b;
    if (kind == NormalizerKind::Convex) eb.probGrid = {R(0), R(1, 2), R(1)};
    auto carrier = s->enumerate(atoms({"a", "b"}), eb);
    if (carrier.size() > 30) carrier.resize(30);
    auto alg = s->free_algebra(carrier);
    for (const auto& e : s->theory().equations) {
      auto r = holds(alg, e);
      EXPECT_TRUE(r.holds) << normalizer_name(kind) << ": " << to_string(e);
    }
  }
}

TEST(Quotient, RepresentativeRoundTrips) {
  for (auto kind : {NormalizerKind::Monoid, NormalizerKind::Semilattice, NormalizerKind::CommMonoid,
                    NormalizerKind::Convex, NormalizerKind::IdemSemiring, NormalizerKind::Semiring,
                    NormalizerKind::TwoMonoidsAbsorb}) {
    auto s = make(kind);
    for (const auto& v : s->enumerate(atoms({"a", "b"}), Bound{}))
      EXPECT_EQ(s->q(s->representative(v)), v) << normalizer_name(kind);
  }
}

TEST(Quotient, QIsAMonadMorphism) {
  Bound b;
  b.maxTermDepth = 2;
  b.probGrid = {R(0), R(1, 2), R(1)};
  for (auto kind : {NormalizerKind::Monoid, NormalizerKind::Semilattice, NormalizerKind::Convex,
                    NormalizerKind::IdemSemiring, NormalizerKind::TwoMonoidsAbsorb}) {
    auto s = make(kind);
    auto free = free_term_monad(s->theory().signature);
    Bound tb = b;
    tb.maxTermDepth = 1;
    for (const auto& x : atoms({"a", "b"})) EXPECT_EQ(s->q(free->unit(x)), s->unit(x));
    // terms over terms: mult_S . S(q) . q = q . mult_free
    auto inner = free->enumerate(atoms({"a"}), tb);
    auto outer = free->enumerate(inner, tb);
    for (const auto& t : outer) {
      Value lhs = s->mult(s->map([&](const Value& u) { return s->q(u); }, s->q(t)));
      EXPECT_EQ(lhs, s->q(free->mult(t))) << normalizer_name(kind);
    }
  }
}

TEST(Quotient, SurjectiveOntoEnumeratedValues) {
  auto s = make(NormalizerKind::IdemSemiring);
  auto free = free_term_monad(s->theory().signature);
  Bound b;
  b.maxTermDepth = 2;
  std::set<Value> image;
  for (const auto& t : free->enumerate(atoms({"a"}), b)) image.insert(s->q(t));
  Bound small;
  small.maxWordLen = 1;
  small.maxSetSize = 2;
  for (const auto& v : s->enumerate(atoms({"a"}), small)) EXPECT_TRUE(image.count(v)) << v.size();
}

TEST(Recognize, CanonicalTheoriesAndRenamedOps) {
  OpRoles roles{"·", "1", "|", "zero", "⊕"};
  for (auto kind : {NormalizerKind::Monoid, NormalizerKind::Semilattice, NormalizerKind::CommMonoid,
                    NormalizerKind::Convex, NormalizerKind::IdemSemiring, NormalizerKind::Semiring,
                    NormalizerKind::TwoMonoidsAbsorb}) {
    auto th = template_theory(kind, roles);
    auto r = recognize(th);
    ASSERT_TRUE(r) << normalizer_name(kind);
    EXPECT_EQ(r->kind, kind);
    auto expected = template_theory(kind, r->roles);
    EXPECT_TRUE(same_equations(th.equations, expected.equations));
  }
  Theory odd = template_theory(NormalizerKind::Monoid, roles);
  odd.equations.pop_back();
  EXPECT_FALSE(recognize(odd));
  EXPECT_THROW((void)quotient_monad(odd, NormalizerKind::Monoid), SignatureError);
}

TEST(Quotient, GenericIdempotentMagma) {
  Theory th;
  th.signature = Signature({{"•", 2, false}});
  th.equations.push_back(E({"x"}, B("•", V(0), V(0)), V(0)));
  Bound b;
  b.maxTermDepth = 2;
  auto s = quotient_monad(th, b);
  EXPECT_EQ(s->kind(), NormalizerKind::Generic);
  EXPECT_EQ(s->q(op("•", L("a"), L("a"))), L("a"));
  EXPECT_EQ(s->q(op("•", op("•", L("a"), L("a")), L("a"))), L("a"));
  EXPECT_NE(s->q(op("•", L("a"), L("b"))), s->q(op("•", L("b"), L("a"))));
  EXPECT_TRUE(s->inner_only());
}

TEST(Quotient, GenericMatchesCommutativeMonoidNormalizer) {
  auto th = template_theory(NormalizerKind::CommMonoid, default_roles());
  Bound b;
  b.maxTermDepth = 1;
  auto generic = std::make_shared<QuotientMonad>(th, NormalizerKind::Generic, OpRoles{}, b);
  auto canon = make(NormalizerKind::CommMonoid);
  auto free = free_term_monad(th.signature);
  auto terms = free->enumerate(atoms({"a"}), b);
  for (const auto& t : terms)
    for (const auto& u : terms)
      EXPECT_EQ(generic->q(t) == generic->q(u), canon->q(t) == canon->q(u));
}
