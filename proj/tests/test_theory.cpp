#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace mlayers;
using namespace mlayers::testing;

namespace {

// f(x1, g(x3, x2), x1) with context [x1, x2, x3]
Term sample_f() {
  return Term::app("f", {V(0), Term::app("g", {V(2), V(1)}), V(0)});
}

}  // namespace

TEST(Vars, FirstOccurrenceOrder) {
  EXPECT_EQ(vars(sample_f()), (std::vector<std::size_t>{0, 2, 1}));
  EXPECT_EQ(vars(V(0)), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(vars(C("skip")).empty());
}

TEST(Args, LeftToRightOccurrences) {
  EXPECT_EQ(args(sample_f()), (std::vector<std::size_t>{0, 2, 1, 0}));
  EXPECT_EQ(args(B("•", V(0), V(0))), (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(args(B("•", V(0), V(1))), (std::vector<std::size_t>{0, 1}));
}

TEST(PrepareIndices, ProjectionPairing) {
  EXPECT_EQ(prepare_indices(B("•", V(0), V(1)), 2), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(prepare_indices(B("•", V(1), V(0)), 2), (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(prepare_indices(B("•", V(0), V(0)), 1), (std::vector<std::size_t>{0, 0}));
  EXPECT_THROW((void)prepare_indices(B("•", V(0), V(3)), 2), SignatureError);
}

TEST(Classify, StackShapes) {
  EXPECT_EQ(classify(E({"x", "y", "z"}, B(";", V(0), B(";", V(1), V(2))), B(";", B(";", V(0), V(1)), V(2)))),
            SyntacticClass::Linear);
  EXPECT_EQ(classify(E({"x"}, B("+", V(0), V(0)), V(0))), SyntacticClass::Balanced);
  EXPECT_EQ(classify(E({"x"}, B(";", V(0), C("abort")), C("abort"))), SyntacticClass::AffineSafe);
  EXPECT_EQ(classify(E({"x", "y"}, B(";", V(0), V(0)), V(1))), SyntacticClass::General);
}

TEST(Classify, StableUnderRenamingAndSwap) {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    Equation e{{"x", "y", "z"}, random_term(rng, 3, 3), random_term(rng, 3, 3)};
    std::vector<std::size_t> perm{2, 0, 1};
    Equation renamed{{"u", "v", "w"}, e.lhs.renamed(perm), e.rhs.renamed(perm)};
    Equation swapped{e.context, e.rhs, e.lhs};
    EXPECT_EQ(classify(e), classify(renamed));
    EXPECT_EQ(classify(e), classify(swapped));
    EXPECT_EQ(canonical_form(e), canonical_form(renamed));
    EXPECT_EQ(canonical_form(e), canonical_form(swapped));
  }
}

TEST(Validate, RejectsArityAndParameterErrors) {
  Signature sig({{";", 2, false}, {"skip", 0, false}, {"⊕", 2, true}});
  EXPECT_NO_THROW(validate(B(";", V(0), C("skip")), sig, 1, false));
  EXPECT_THROW(validate(Term::app(";", {V(0)}), sig, 1, false), SignatureError);
  EXPECT_THROW(validate(C("abort"), sig, 0, false), SignatureError);
  EXPECT_THROW(validate(B("⊕", V(0), V(0)), sig, 1, false), SignatureError);
  auto lam = ParamExpr::var("λ");
  EXPECT_THROW(validate(Term::app("⊕", {V(0), V(0)}, lam), sig, 1, false), SignatureError);
  EXPECT_NO_THROW(validate(Term::app("⊕", {V(0), V(0)}, lam), sig, 1, true));
  EXPECT_THROW(validate(Term::app("⊕", {V(0), V(0)}, ParamExpr::constant(Rational(3, 2))), sig, 1, false),
               SignatureError);
}

TEST(Signature, DuplicateNamesRejected) {
  Signature sig;
  sig.add({";", 2, false});
  EXPECT_THROW(sig.add({";", 2, false}), SignatureError);
  EXPECT_THROW((void)sig.merged(Signature({{";", 1, false}})), SignatureError);
}

TEST(ParamExpr, DivisionByZeroGivesNothing) {
  using Op = ParamExpr::Op;
  auto lam = ParamExpr::var("λ");
  auto tau = ParamExpr::var("τ");
  auto one = ParamExpr::constant(Rational(1));
  auto mixed = ParamExpr::binary(Op::Add, lam, ParamExpr::binary(Op::Mul, ParamExpr::binary(Op::Sub, one, lam), tau));
  auto ratio = ParamExpr::binary(Op::Div, lam, mixed);
  EXPECT_FALSE(ratio.eval({{"λ", Rational(0)}, {"τ", Rational(0)}}).has_value());
  EXPECT_EQ(*ratio.eval({{"λ", Rational(1, 2)}, {"τ", Rational(1, 2)}}), Rational(2, 3));
  EXPECT_THROW((void)ratio.eval({{"λ", Rational(1, 2)}}), SignatureError);
}

TEST(ToString, InfixAndCallSyntax) {
  Equation e{{"p", "q"}, B(";", V(0), B("+", V(1), C("abort"))), Term::app("f", {V(0)})};
  EXPECT_EQ(to_string(e), "p ; (q + abort) = f(p)");
}

TEST(SameEquations, IgnoresOrderNamesAndOrientation) {
  std::vector<Equation> a{E({"x"}, B("+", V(0), V(0)), V(0)), E({"x", "y"}, B("+", V(0), V(1)), B("+", V(1), V(0)))};
  std::vector<Equation> b{E({"q", "p"}, B("+", V(1), V(0)), B("+", V(0), V(1))), E({"z"}, V(0), B("+", V(0), V(0)))};
  EXPECT_TRUE(same_equations(a, b));
  b.pop_back();
  EXPECT_FALSE(same_equations(a, b));
}
