#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mlayers/diagrams.hpp"
#include "mlayers/lifting.hpp"
#include "mlayers/normalizer.hpp"
#include "mlayers/preservation.hpp"

namespace mlayers {

/// One verified axiom: DL1..DL4, NATURALITY, WELL_DEFINED or a monad law.
using LawReport = CheckOutcome;

/// lambda: S(TX) -> T(SX) for a quotient monad S and an outer monad T.
class QuotientLaw {
public:
  using Fn = std::function<Value(const Value&)>;

  /// lambda(s) = T(q)(rho(representative(s))).
  QuotientLaw(QuotientPtr inner, MonadPtr outer);
  /// A law with an explicitly supplied component, e.g. a corrupted one in tests.
  QuotientLaw(QuotientPtr inner, MonadPtr outer, Fn apply);

  [[nodiscard]] const QuotientPtr& inner() const noexcept { return inner_; }
  [[nodiscard]] const MonadPtr& outer() const noexcept { return outer_; }
  [[nodiscard]] const RhoLaw& rho() const noexcept { return rho_; }
  [[nodiscard]] Value apply(const Value& s) const { return override_ ? override_(s) : canonical_apply(s); }
  /// The canonical component, ignoring any override.
  [[nodiscard]] Value canonical_apply(const Value& s) const;

private:
  QuotientPtr inner_;
  MonadPtr outer_;
  RhoLaw rho_;
  Fn override_;
};

struct LawConfig {
  std::vector<Value> carrier = atoms({"a", "b"});
  Bound bound;
  std::size_t max_inputs = 2000;  // per nested level of an enumerated input set
};

struct BuiltLaw {
  QuotientLaw law;
  LawReport well_defined;
};

/// Refuses (LawRefused) unless every verdict is PRESERVED_*; the message
/// names the offending equations. Then checks that lambda does not depend on
/// the chosen representative over bounded terms.
BuiltLaw build_quotient_law(QuotientPtr inner, MonadPtr outer, std::span<const Verdict> verdicts,
                            const LawConfig& cfg = {});

/// lambda independent of representatives: T(q)(rho(r1)) = T(q)(rho(r2)) whenever q(r1) = q(r2).
LawReport check_well_defined(const QuotientLaw& law, const LawConfig& cfg);

/// T . S with unit T(unit_S) . unit_T and mult T(mult_S) . mult_T . T(lambda).
class CompositeMonad final : public Monad {
public:
  explicit CompositeMonad(QuotientLaw law) : law_(std::move(law)) {}

  std::string name() const override;
  Value unit(const Value& x) const override;
  Value map(const ElemFn& f, const Value& tx) const override;
  Value mult(const Value& ttx) const override;
  /// T(psi_S) . psi_T; throws InnerOnlyMonad when either layer lacks one.
  Value fubini(const Value& tx, const Value& ty) const override;
  bool inner_only() const override;
  std::vector<Value> enumerate(std::span<const Value> carrier, const Bound& b) const override;
  bool truncated() const override { return true; }

  [[nodiscard]] const QuotientLaw& law() const noexcept { return law_; }

private:
  QuotientLaw law_;
};

using CompositePtr = std::shared_ptr<const CompositeMonad>;

CompositePtr compose(const QuotientLaw& law);

/// DL1..DL4 and naturality, exhaustively on the configured fragment.
std::vector<LawReport> verify_distlaw(const QuotientLaw& law, const LawConfig& cfg = {});

/// Unit and associativity laws of the composite, on the first of the
/// configured bound and its shrunken variants whose enumeration fits.
std::vector<LawReport> verify_monad(const CompositeMonad& cm, const LawConfig& cfg = {});

/// T(S f) . lambda = lambda . S(T f) for all functions between carriers of size <= max_size.
LawReport check_law_naturality(const QuotientLaw& law, const Bound& b, std::size_t max_size = 2);
/// T(T_Sigma f) . rho = rho . T_Sigma(T f).
LawReport check_rho_naturality(const RhoLaw& rho, const Bound& b, std::size_t max_size = 2);
/// S(f) . q = q . T_Sigma(f).
LawReport check_q_naturality(const QuotientMonad& s, const Bound& b, std::size_t max_size = 2);

}  // namespace mlayers
