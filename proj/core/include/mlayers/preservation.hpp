#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mlayers/algebra.hpp"
#include "mlayers/diagrams.hpp"
#include "mlayers/monad.hpp"

namespace mlayers {

enum class ProbeStatus { HoldsOnFragment, Fails, Declared };
const char* probe_status_name(ProbeStatus s) noexcept;

/// Outcome of testing one structural property of a monad.
///
/// A failing probe always carries a witness that can be replayed.
struct ProbeResult {
  std::string property;
  ProbeStatus status = ProbeStatus::HoldsOnFragment;
  bool declared_holds = false;  // meaningful for Declared only
  std::size_t inputs = 0;
  std::string fragment;
  std::optional<DiagramWitness> witness;

  [[nodiscard]] bool holds() const noexcept {
    return status == ProbeStatus::HoldsOnFragment || (status == ProbeStatus::Declared && declared_holds);
  }
};

struct MonadProfile {
  std::string monad;
  bool from_table = false;  // backed by the table of known monads
  ProbeResult symmetric;
  ProbeResult relevant;
  ProbeResult affine;
};

struct ProbeConfig {
  std::vector<std::size_t> carrier_sizes{2, 3};
  Bound bound;
};

ProbeResult probe_symmetric(const Monad& t, const ProbeConfig& cfg);
/// psi(u, u) = T(diagonal)(u).
ProbeResult probe_relevant(const Monad& t, const ProbeConfig& cfg);
/// T(!)(u) = unit(*).
ProbeResult probe_affine(const Monad& t, const ProbeConfig& cfg);

/// Name under which t appears in the table of known monads, if it does.
std::optional<std::string> known_monad(const Monad& t);

/// Symmetric, relevant and affine status of t.
///
/// Known monads replay their tabulated failure witnesses and probe the
/// properties they are listed as having; a probe contradicting the table
/// throws Error. Other monads are probed on the configured fragments.
MonadProfile profile_monad(const Monad& t, const ProbeConfig& cfg = {});

/// T(prepare_t) . psi^(|V|) = psi^(|args t|) . prepare_t on T(carrier)^|V|.
CheckOutcome residual_commutes(const Monad& t, const Term& term, std::size_t context_size,
                               std::span<const Value> carrier, const Bound& b);

/// A model of the inner theory and a valuation in its lifting on which the
/// two sides of an equation differ.
///
/// Table models list their operations over `carrier`; free models are the
/// free algebra of the inner theory generated by `carrier`.
struct Counterexample {
  enum class Model { Table, Free } model = Model::Table;
  std::vector<Value> carrier;
  std::map<std::string, std::vector<std::size_t>> tables;
  std::vector<Value> valuation;
  ParamEnv params;
  Value lhs;
  Value rhs;
};

struct SearchConfig {
  std::size_t max_carrier = 3;
  std::size_t max_generators = 2;       // free models over 1..max_generators atoms
  std::size_t max_algebras = 20000;     // per carrier size
  std::size_t max_tables = 1u << 20;    // candidate tables for a single operation
  std::size_t max_valuations = 20000;   // lifted valuations per algebra
};

enum class VerdictStatus { PreservedSyntactic, PreservedResidual, Falsified, Unknown };
const char* verdict_name(VerdictStatus s) noexcept;
[[nodiscard]] inline bool preserved(VerdictStatus s) noexcept {
  return s == VerdictStatus::PreservedSyntactic || s == VerdictStatus::PreservedResidual;
}

struct Verdict {
  Equation equation;
  SyntacticClass cls = SyntacticClass::General;
  VerdictStatus status = VerdictStatus::Unknown;
  std::string theorem;  // criterion behind PreservedSyntactic
  std::vector<std::string> evidence;
  std::optional<Counterexample> counterexample;
};

/// Residual squares depend only on the variable-occurrence pattern of a side,
/// so they can be shared across equations. Valid for one monad and one probe
/// configuration.
class ResidualCache {
public:
  [[nodiscard]] CheckOutcome get(const Monad& t, const Term& side, std::size_t context_size,
                                 std::span<const Value> carrier, const Bound& b);
  [[nodiscard]] std::size_t size() const;

private:
  using Key = std::pair<std::size_t, std::vector<std::size_t>>;  // carrier size, prepared indices
  mutable std::mutex m_;
  std::map<Key, CheckOutcome> entries_;
};

struct PreservationConfig {
  ProbeConfig probes;
  SearchConfig search;
  bool residual = true;
  bool model_search = true;
  unsigned jobs = 1;
  std::shared_ptr<ResidualCache> residual_cache;  // optional
};

/// Decides whether e, holding in every model of `inner`, holds in every
/// algebra lifted along t. Criteria are tried in a fixed order; the first
/// that applies decides.
Verdict check_preservation(const Monad& t, const MonadProfile& profile, const Theory& inner, const Equation& e,
                           const PreservationConfig& cfg = {});

/// check_preservation for every equation of the theory, in order.
std::vector<Verdict> check_theory(const Monad& t, const MonadProfile& profile, const Theory& inner,
                                  const PreservationConfig& cfg = {});

/// Rebuilds the counterexample's lifted algebra and re-evaluates both sides.
/// True when they still differ and match the recorded values.
bool replay(const Monad& t, const Theory& inner, const Equation& e, const Counterexample& c);

/// Atoms a, b, c, ... used as carriers of table models.
std::vector<Value> letter_carrier(std::size_t n);

/// Enumerates the models of `th` on {0..n-1} as operation tables, calling
/// visit on each until it returns true. Returns the number visited.
/// Throws SignatureError for parameterized operations and BoundExceeded when
/// one operation has more than max_tables candidate tables.
std::size_t for_each_model(const Theory& th, std::size_t n, const SearchConfig& cfg,
                           const std::function<bool(const std::map<std::string, std::vector<std::size_t>>&)>& visit);

}  // namespace mlayers
