#include "mlayers/commands.hpp"

#include "mlayers/render.hpp"

namespace mlayers {

PipelineConfig pipeline_config(const SpecFile& spec, const CommandOptions& opts) {
  PipelineConfig cfg;
  cfg.bound = opts.bound;
  cfg.preservation.probes.bound = opts.bound;
  cfg.preservation.jobs = std::max<std::size_t>(1, opts.jobs);
  cfg.laws.bound = opts.bound;
  if (spec.atoms.size() >= 2) cfg.atoms = {Value::atom(spec.atoms[0]), Value::atom(spec.atoms[1])};
  cfg.laws.carrier = cfg.atoms;
  cfg.keep_unknown = opts.keep_unknown;
  return cfg;
}

CommandResult cmd_check(const SpecFile& spec, const CommandOptions& opts) {
  auto report = check_stack(spec.layers, pipeline_config(spec, opts));
  int code = 0;
  for (const auto& s : report.stages)
    for (const auto& v : s.verdicts) {
      if (v.status == VerdictStatus::Unknown) code = 2;
      else if (v.status == VerdictStatus::Falsified) code = std::max(code, 1);
    }
  auto doc = make_report("check", report, spec.atoms, opts.bound);
  doc.exit_code = code;
  return {code, std::move(doc)};
}

CommandResult cmd_compose(const SpecFile& spec, const CommandOptions& opts) {
  auto report = compose_stack(spec.layers, pipeline_config(spec, opts));
  auto doc = make_report("compose", report, spec.atoms, opts.bound);
  return {report.exit_code(), std::move(doc)};
}

CommandResult cmd_verify_laws(const SpecFile& spec, const CommandOptions& opts) {
  auto report = compose_stack(spec.layers, pipeline_config(spec, opts));
  int code = 0;
  for (const auto& s : report.stages) {
    for (const auto& r : s.law_reports) code = r.ok ? code : 2;
    for (const auto& c : s.axiom_checks) code = c.result.holds ? code : 2;
  }
  auto doc = make_report("verify-laws", report, spec.atoms, opts.bound);
  doc.exit_code = code;
  return {code, std::move(doc)};
}

namespace {

StageSemantics semantics_at(const SpecFile& spec, std::size_t stage, const CommandOptions& opts) {
  if (stage >= spec.layers.size())
    throw Error("stage " + std::to_string(stage) + " does not exist; the stack has " +
                std::to_string(spec.layers.size() - 1) + " outer layer(s)");
  if (stage == 0) return StageSemantics(layer_monad(spec.layers.front(), opts.bound));
  std::vector<LayerSpec> prefix(spec.layers.begin(), spec.layers.begin() + static_cast<std::ptrdiff_t>(stage) + 1);
  auto cfg = pipeline_config(spec, opts);
  return stage_semantics(check_stack(prefix, cfg), stage, opts.bound);
}

}  // namespace

Value eval_program(const SpecFile& spec, std::string_view program, std::size_t stage, const CommandOptions& opts) {
  if (spec.layers.empty()) throw Error("at least one inner seed required");
  Signature sig;
  std::map<std::string, std::string> later;
  for (std::size_t i = 0; i < spec.layers.size(); ++i)
    for (const auto& op : spec.layers[i].theory.signature.ops()) {
      if (i <= stage) sig.add(op);
      else
        later[op.name] = "operation '" + op.name + "' belongs to layer '" + spec.layers[i].name + "' (stage " +
                         std::to_string(i) + ") and is not available at stage " + std::to_string(stage);
    }
  Value term = parse_program(program, sig, spec.atoms, spec.precedence, &later);
  return semantics_at(spec, stage, opts).denote(term);
}

CommandResult cmd_eval(const SpecFile& spec, std::string_view program, const CommandOptions& opts) {
  const std::size_t stage = opts.stage.value_or(spec.layers.empty() ? 0 : spec.layers.size() - 1);
  const Value v = eval_program(spec, program, stage, opts);
  ReportDocument doc;
  doc.command = "eval";
  doc.bounds = doc::from_bound(opts.bound);
  doc.atoms = spec.atoms;
  CompositionReport shape;
  shape.layers = spec.layers;
  doc.layers = make_report("eval", shape, spec.atoms, opts.bound).layers;
  std::string monad = spec.layers.front().name;
  for (std::size_t i = 1; i <= stage; ++i) monad = spec.layers[i].name + "∘" + monad;
  doc.evaluation = doc::Evaluation{stage, monad, std::string(program), canonical(v), pretty_lines(v)};
  return {0, std::move(doc)};
}

}  // namespace mlayers
