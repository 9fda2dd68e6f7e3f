#pragma once

#include <optional>
#include <string_view>

#include "mlayers/report.hpp"
#include "mlayers/spec.hpp"

namespace mlayers {

struct CommandOptions {
  Bound bound;
  bool keep_unknown = false;
  std::size_t jobs = 1;
  std::optional<std::size_t> stage;  // eval: defaults to the last stage
};

struct CommandResult {
  int exit_code = 0;
  ReportDocument report;
};

/// Pipeline configuration for a spec: the bound everywhere, laws and axiom
/// checks on the first two declared atoms (a, b when fewer are declared).
PipelineConfig pipeline_config(const SpecFile& spec, const CommandOptions& opts);

/// Preservation verdicts only. Exit 0 when every equation is preserved,
/// 1 when some are falsified, 2 when some stay unknown.
CommandResult cmd_check(const SpecFile& spec, const CommandOptions& opts);
/// The full pipeline; exit code as CompositionReport::exit_code.
CommandResult cmd_compose(const SpecFile& spec, const CommandOptions& opts);
/// The full pipeline reported for its laws: exit 0 when every law and
/// composite axiom check passes, 2 otherwise.
CommandResult cmd_verify_laws(const SpecFile& spec, const CommandOptions& opts);

/// Denotation of a closed program at a stage (0 = the seed alone).
Value eval_program(const SpecFile& spec, std::string_view program, std::size_t stage, const CommandOptions& opts = {});
/// eval_program wrapped in a report; the rendering uses pretty_lines.
CommandResult cmd_eval(const SpecFile& spec, std::string_view program, const CommandOptions& opts);

}  // namespace mlayers
