#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlayers/distlaw.hpp"
#include "mlayers/normalizer.hpp"
#include "mlayers/preservation.hpp"

namespace mlayers {

enum class LayerRole { InnerSeed, Outer };

struct LayerSpec {
  std::string name;
  Theory theory;
  NormalizerKind normalizer = NormalizerKind::Generic;
  LayerRole role = LayerRole::Outer;
};

/// For every inner op f of arity >= 1, outer op g of arity >= 1 and argument
/// position j of f: f(.., g(y1..yn), ..) = g(f(.., y1, ..), .., f(.., yn, ..)).
/// For every outer constant c and position j of f: f(.., c, ..) = c.
std::vector<Equation> generate_distributivity(const Signature& inner, const Signature& outer);

struct DroppedEquation {
  Equation equation;
  Verdict verdict;
};

struct WeakenedTheory {
  Signature signature;  // union of the layer signatures so far
  std::vector<Equation> kept;
  std::vector<DroppedEquation> dropped;
  std::vector<Equation> generated;
};

/// The semantics of one stage: values are T(S X), inner operations act by
/// lifting along T, outer operations by T's own free algebra.
class StageSemantics {
public:
  StageSemantics(QuotientPtr inner, QuotientPtr outer);
  /// The seed alone: values are S X.
  explicit StageSemantics(QuotientPtr seed);

  [[nodiscard]] const Monad& monad() const noexcept { return *monad_; }
  [[nodiscard]] MonadPtr monad_ptr() const noexcept { return monad_; }
  [[nodiscard]] const Signature& signature() const noexcept { return sig_; }
  /// Interpretation of every operation of the stage's signature on the listed carrier.
  [[nodiscard]] FiniteAlgebra algebra(std::vector<Value> carrier) const;
  /// Denotation of a closed term whose leaves hold atoms.
  [[nodiscard]] Value denote(const Value& term) const;

private:
  QuotientPtr inner_;
  QuotientPtr outer_;
  MonadPtr monad_;
  Signature sig_;
};

struct GeneratedCheck {
  std::string origin;  // "kept", "outer", "generated"
  Equation equation;
  HoldsResult result;
  std::size_t carrier_size = 0;
};

/// Checks each equation with holds() in the stage algebra on a bounded
/// fragment of T(S X).
std::vector<GeneratedCheck> verify_generated_axioms(const StageSemantics& sem, std::span<const Equation> eqs,
                                                    std::string_view origin, const std::vector<Value>& atoms,
                                                    const Bound& b, std::size_t max_valuations = 20000);

struct StageReport {
  std::size_t index = 0;  // 1-based
  std::string layer;
  std::string outer_monad;
  std::string inner_monad;
  std::optional<NormalizerKind> inner_kind;  // nullopt: generic normal forms
  MonadProfile profile;
  Theory input;
  std::vector<Verdict> verdicts;
  WeakenedTheory weakened;
  std::vector<LawReport> law_reports;  // WELL_DEFINED, DL1..4, NATURALITY, MONAD_LAWS/*
  std::vector<GeneratedCheck> axiom_checks;
  Theory output;
  bool retained_unknown = false;
  bool alarm = false;  // a law check failed although every kept equation is preserved
  std::vector<std::string> narrative;

  [[nodiscard]] bool verified() const noexcept { return !retained_unknown && !alarm; }
};

struct PipelineConfig {
  Bound bound;
  PreservationConfig preservation;
  LawConfig laws;
  std::vector<Value> atoms = mlayers::atoms({"a", "b"});
  bool keep_unknown = false;
  bool verify_laws = true;
};

struct CompositionReport {
  std::vector<LayerSpec> layers;
  std::vector<StageReport> stages;
  Theory final_theory;

  /// 0 all verified, nothing dropped; 1 equations dropped, composites
  /// verified; 2 some composite unverified.
  [[nodiscard]] int exit_code() const noexcept;
};

/// Validates the stack shape: one seed, first, then at least one outer layer.
void validate_stack(std::span<const LayerSpec> layers);

/// Quotient monad realizing a layer; outer layers must realize a built-in
/// commutative monad.
QuotientPtr layer_monad(const LayerSpec& layer, const Bound& b = {});

/// Semantics after `stage` outer layers (0: the seed alone), rebuilt from the
/// theories kept by a composition report.
StageSemantics stage_semantics(const CompositionReport& report, std::size_t stage, const Bound& b = {});

/// Only the preservation checks of the first outer layer against the seed.
CompositionReport check_stack(const std::vector<LayerSpec>& layers, const PipelineConfig& cfg = {});

/// The full pipeline.
CompositionReport compose_stack(const std::vector<LayerSpec>& layers, const PipelineConfig& cfg = {});

}  // namespace mlayers
