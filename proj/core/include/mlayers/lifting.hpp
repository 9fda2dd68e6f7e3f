#pragma once

#include <span>
#include <vector>

#include "mlayers/algebra.hpp"
#include "mlayers/monad.hpp"

namespace mlayers {

/// lambda^Sigma: H_Sigma T -> T H_Sigma, the operation tag pushed through psi^(k).
class SigmaLaw {
public:
  SigmaLaw(Signature sig, MonadPtr outer);

  [[nodiscard]] const Signature& signature() const noexcept { return sig_; }
  [[nodiscard]] const MonadPtr& outer() const noexcept { return outer_; }

  /// T(tag_op)(psi^k(vs)); tag_op builds the depth-1 term op(x1..xk).
  [[nodiscard]] Value apply(const std::string& op, const std::optional<Rational>& param,
                            std::span<const Value> vs) const;

private:
  Signature sig_;
  MonadPtr outer_;
};

/// rho^Sigma: T_Sigma T -> T T_Sigma, by structural recursion over terms whose
/// leaves hold T-values.
class RhoLaw {
public:
  explicit RhoLaw(SigmaLaw sl) : sl_(std::move(sl)) {}
  [[nodiscard]] const SigmaLaw& sigma() const noexcept { return sl_; }
  [[nodiscard]] Value apply(const Value& term) const;

private:
  SigmaLaw sl_;
};

/// Throws InnerOnlyMonad when T has no Fubini transformation.
SigmaLaw build_sigma_law(const Signature& sig, MonadPtr outer);
RhoLaw extend_to_rho(const SigmaLaw& sl);

/// The lifted algebra on T(carrier): op^ = T(op) . psi^(k).
///
/// Lifted operations memoize their results, so the returned algebra must not
/// be shared between threads. `t` must outlive it.
FiniteAlgebra lift_algebra(const Monad& t, const Signature& sig, const FiniteAlgebra& a,
                           std::vector<Value> lifted_carrier);

}  // namespace mlayers
