#include <gtest/gtest.h>

#include "helpers.hpp"
#include "mlayers/diagrams.hpp"
#include "mlayers/normalizer.hpp"

using namespace mlayers;
using namespace mlayers::testing;

namespace {

void expect_all(const std::vector<CheckOutcome>& rs) {
  for (const auto& r : rs) EXPECT_TRUE(r.ok) << r.check << " " << r.fragment;
}

}  // namespace

TEST(Diagrams, CommutativeMonadsOnSmallCarriers) {
  for (const auto& t : {fin_powerset(), multiset(), fin_distribution()}) {
    auto x = atoms({"a", "b"});
    expect_all(check_monad_laws(*t, x, Bound{}));
    EXPECT_TRUE(check_mm1(*t, x, Bound{}).ok) << t->name();
    EXPECT_TRUE(check_mm2(*t, x, Bound{}).ok) << t->name();
    expect_all(check_mf(*t, x, Bound{}));
    EXPECT_TRUE(check_sym(*t, x, Bound{}).ok) << t->name();
  }
}

TEST(Diagrams, FreeMonoidLaws) { expect_all(check_monad_laws(*free_monoid(), atoms({"a", "b"}), Bound{})); }

TEST(Diagrams, NaturalitySquares) {
  for (const auto& t : {fin_powerset(), multiset(), fin_distribution()}) {
    expect_all(check_monad_naturality(*t, Bound{}));
    EXPECT_TRUE(check_fubini_naturality(*t, Bound{}).ok) << t->name();
  }
  expect_all(check_monad_naturality(*free_monoid(), Bound{}));
}

TEST(Diagrams, BrokenMultiplicationIsCaught) {
  // powerset whose multiplication forgets the last inner set
  struct Broken final : Monad {
    MonadPtr p = fin_powerset();
    std::string name() const override { return "broken"; }
    Value unit(const Value& x) const override { return p->unit(x); }
    Value map(const ElemFn& f, const Value& v) const override { return p->map(f, v); }
    Value mult(const Value& v) const override {
      std::vector<Value> keep(v.items().begin(), v.items().end());
      if (keep.size() > 1) keep.pop_back();
      return p->mult(Value::set(keep));
    }
    Value fubini(const Value& a, const Value& b) const override { return p->fubini(a, b); }
    std::vector<Value> enumerate(std::span<const Value> c, const Bound& b) const override { return p->enumerate(c, b); }
  } broken;
  auto rs = check_monad_laws(broken, atoms({"a", "b"}), Bound{});
  EXPECT_FALSE(rs[1].ok);
  ASSERT_TRUE(rs[1].witness);
  EXPECT_NE(rs[1].witness->lhs, rs[1].witness->rhs);
}
