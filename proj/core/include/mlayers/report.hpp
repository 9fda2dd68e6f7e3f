#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlayers/pipeline.hpp"

namespace mlayers {

/// Serializable form of a command's result. Values are stored as canonical
/// literals (see render.hpp), equations as text.
namespace doc {

struct Witness {
  std::vector<std::string> inputs;
  std::string lhs;
  std::string rhs;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Probe {
  std::string property;
  std::string status;  // holds_on_fragment | fails | declared
  bool holds = false;
  std::size_t inputs = 0;
  std::string fragment;
  std::optional<Witness> witness;
  friend bool operator==(const Probe&, const Probe&) = default;
};

struct Counterexample {
  std::string model;  // table | free
  std::vector<std::string> carrier;
  std::map<std::string, std::vector<std::size_t>> tables;
  std::vector<std::string> valuation;
  std::map<std::string, std::string> params;
  std::string lhs;
  std::string rhs;
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct Verdict {
  std::string equation;
  std::string syntactic_class;
  std::string status;
  std::string theorem;
  std::vector<std::string> evidence;
  std::optional<Counterexample> counterexample;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct Check {
  std::string name;
  bool ok = true;
  std::size_t inputs = 0;
  std::string fragment;
  std::optional<Witness> witness;
  friend bool operator==(const Check&, const Check&) = default;
};

struct Axiom {
  std::string origin;
  std::string equation;
  bool holds = true;
  std::size_t carrier_size = 0;
  std::size_t valuations = 0;
  std::optional<Witness> witness;
  friend bool operator==(const Axiom&, const Axiom&) = default;
};

struct Stage {
  std::size_t index = 0;
  std::string layer;
  std::string outer_monad;
  std::string inner_monad;
  std::string inner_kind;  // empty when no canonical kind matches
  std::vector<Probe> profile;
  std::vector<Verdict> verdicts;
  std::vector<std::string> kept;
  std::vector<std::string> dropped;
  std::vector<std::string> generated;
  std::vector<Check> laws;
  std::vector<Axiom> axioms;
  std::vector<std::string> theory;
  bool retained_unknown = false;
  bool alarm = false;
  bool verified = true;
  std::vector<std::string> narrative;
  friend bool operator==(const Stage&, const Stage&) = default;
};

struct Layer {
  std::string name;
  std::string role;  // seed | outer
  std::string normalizer;
  std::vector<std::string> operations;  // "name/arity", "name/arity param"
  std::vector<std::string> equations;
  friend bool operator==(const Layer&, const Layer&) = default;
};

struct Bounds {
  std::size_t maxWordLen = 0;
  std::size_t maxSetSize = 0;
  std::size_t maxMultiplicity = 0;
  std::vector<std::string> probGrid;
  std::size_t maxTermDepth = 0;
  std::size_t ceiling = 0;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

doc::Bounds from_bound(const Bound& b);
Bound to_bound(const doc::Bounds& b);

struct Evaluation {
  std::size_t stage = 0;
  std::string monad;
  std::string program;
  std::string value;      // canonical literal
  std::string rendering;  // pretty_lines
  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

}  // namespace doc

struct ReportDocument {
  std::string command;
  int exit_code = 0;
  doc::Bounds bounds;
  std::vector<std::string> atoms;
  std::vector<doc::Layer> layers;
  std::vector<doc::Stage> stages;
  std::vector<std::string> final_theory;
  std::optional<doc::Evaluation> evaluation;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

/// Document for a pipeline run; law and axiom sections stay empty when the
/// run did not verify laws.
ReportDocument make_report(std::string command, const CompositionReport& report, const std::vector<std::string>& atoms,
                           const Bound& b);

/// Pretty JSON (2-space indent, keys in schema order).
std::string to_json(const ReportDocument& d);
/// Throws Error on malformed input.
ReportDocument from_json(std::string_view text);

/// Human-readable report.
std::string to_text(const ReportDocument& d);

/// Bounds file: a JSON object with any of maxWordLen, maxSetSize,
/// maxMultiplicity, maxTermDepth, ceiling (integers) and probGrid (list of
/// "p/q" strings); missing fields keep their defaults. The result is validated.
Bound parse_bounds(std::string_view json_text);

}  // namespace mlayers
