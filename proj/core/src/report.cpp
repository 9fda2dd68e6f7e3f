#include "mlayers/report.hpp"

#include <nlohmann/json.hpp>

#include "mlayers/render.hpp"
#include "mlayers/utf8.hpp"

namespace mlayers {

using json = nlohmann::ordered_json;

namespace doc {

Bounds from_bound(const Bound& b) {
  Bounds out{b.maxWordLen, b.maxSetSize, b.maxMultiplicity, {}, b.maxTermDepth, b.ceiling};
  for (const auto& r : b.probGrid) out.probGrid.push_back(r.str());
  return out;
}

Bound to_bound(const Bounds& d) {
  Bound b;
  b.maxWordLen = d.maxWordLen;
  b.maxSetSize = d.maxSetSize;
  b.maxMultiplicity = d.maxMultiplicity;
  b.probGrid.clear();
  for (const auto& s : d.probGrid) b.probGrid.push_back(Rational::parse(s));
  b.maxTermDepth = d.maxTermDepth;
  b.ceiling = d.ceiling;
  return b;
}

// nlohmann hooks, found by argument-dependent lookup ------------------------

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get_opt(const json& j, const char* key, std::optional<T>& v) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) v = it->template get<T>();
  else v.reset();
}

void to_json(json& j, const Witness& w) { j = json{{"inputs", w.inputs}, {"lhs", w.lhs}, {"rhs", w.rhs}}; }
void from_json(const json& j, Witness& w) {
  j.at("inputs").get_to(w.inputs);
  j.at("lhs").get_to(w.lhs);
  j.at("rhs").get_to(w.rhs);
}

void to_json(json& j, const Probe& p) {
  j = json{{"property", p.property}, {"status", p.status}, {"holds", p.holds}, {"inputs", p.inputs},
           {"fragment", p.fragment}};
  put_opt(j, "witness", p.witness);
}
void from_json(const json& j, Probe& p) {
  j.at("property").get_to(p.property);
  j.at("status").get_to(p.status);
  j.at("holds").get_to(p.holds);
  j.at("inputs").get_to(p.inputs);
  j.at("fragment").get_to(p.fragment);
  get_opt(j, "witness", p.witness);
}

void to_json(json& j, const Counterexample& c) {
  j = json{{"model", c.model}, {"carrier", c.carrier},   {"tables", c.tables}, {"valuation", c.valuation},
           {"params", c.params}, {"lhs", c.lhs}, {"rhs", c.rhs}};
}
void from_json(const json& j, Counterexample& c) {
  j.at("model").get_to(c.model);
  j.at("carrier").get_to(c.carrier);
  j.at("tables").get_to(c.tables);
  j.at("valuation").get_to(c.valuation);
  j.at("params").get_to(c.params);
  j.at("lhs").get_to(c.lhs);
  j.at("rhs").get_to(c.rhs);
}

void to_json(json& j, const Verdict& v) {
  j = json{{"equation", v.equation}, {"class", v.syntactic_class}, {"status", v.status},
           {"theorem", v.theorem},   {"evidence", v.evidence}};
  put_opt(j, "counterexample", v.counterexample);
}
void from_json(const json& j, Verdict& v) {
  j.at("equation").get_to(v.equation);
  j.at("class").get_to(v.syntactic_class);
  j.at("status").get_to(v.status);
  j.at("theorem").get_to(v.theorem);
  j.at("evidence").get_to(v.evidence);
  get_opt(j, "counterexample", v.counterexample);
}

void to_json(json& j, const Check& c) {
  j = json{{"name", c.name}, {"ok", c.ok}, {"inputs", c.inputs}, {"fragment", c.fragment}};
  put_opt(j, "witness", c.witness);
}
void from_json(const json& j, Check& c) {
  j.at("name").get_to(c.name);
  j.at("ok").get_to(c.ok);
  j.at("inputs").get_to(c.inputs);
  j.at("fragment").get_to(c.fragment);
  get_opt(j, "witness", c.witness);
}

void to_json(json& j, const Axiom& a) {
  j = json{{"origin", a.origin},           {"equation", a.equation},     {"holds", a.holds},
           {"carrier_size", a.carrier_size}, {"valuations", a.valuations}};
  put_opt(j, "witness", a.witness);
}
void from_json(const json& j, Axiom& a) {
  j.at("origin").get_to(a.origin);
  j.at("equation").get_to(a.equation);
  j.at("holds").get_to(a.holds);
  j.at("carrier_size").get_to(a.carrier_size);
  j.at("valuations").get_to(a.valuations);
  get_opt(j, "witness", a.witness);
}

void to_json(json& j, const Stage& s) {
  j = json{{"index", s.index},
           {"layer", s.layer},
           {"outer_monad", s.outer_monad},
           {"inner_monad", s.inner_monad},
           {"inner_kind", s.inner_kind},
           {"profile", s.profile},
           {"verdicts", s.verdicts},
           {"kept", s.kept},
           {"dropped", s.dropped},
           {"generated", s.generated},
           {"laws", s.laws},
           {"axioms", s.axioms},
           {"theory", s.theory},
           {"retained_unknown", s.retained_unknown},
           {"alarm", s.alarm},
           {"verified", s.verified},
           {"narrative", s.narrative}};
}
void from_json(const json& j, Stage& s) {
  j.at("index").get_to(s.index);
  j.at("layer").get_to(s.layer);
  j.at("outer_monad").get_to(s.outer_monad);
  j.at("inner_monad").get_to(s.inner_monad);
  j.at("inner_kind").get_to(s.inner_kind);
  j.at("profile").get_to(s.profile);
  j.at("verdicts").get_to(s.verdicts);
  j.at("kept").get_to(s.kept);
  j.at("dropped").get_to(s.dropped);
  j.at("generated").get_to(s.generated);
  j.at("laws").get_to(s.laws);
  j.at("axioms").get_to(s.axioms);
  j.at("theory").get_to(s.theory);
  j.at("retained_unknown").get_to(s.retained_unknown);
  j.at("alarm").get_to(s.alarm);
  j.at("verified").get_to(s.verified);
  j.at("narrative").get_to(s.narrative);
}

void to_json(json& j, const Layer& l) {
  j = json{{"name", l.name},
           {"role", l.role},
           {"normalizer", l.normalizer},
           {"operations", l.operations},
           {"equations", l.equations}};
}
void from_json(const json& j, Layer& l) {
  j.at("name").get_to(l.name);
  j.at("role").get_to(l.role);
  j.at("normalizer").get_to(l.normalizer);
  j.at("operations").get_to(l.operations);
  j.at("equations").get_to(l.equations);
}

void to_json(json& j, const Bounds& b) {
  j = json{{"maxWordLen", b.maxWordLen},     {"maxSetSize", b.maxSetSize}, {"maxMultiplicity", b.maxMultiplicity},
           {"probGrid", b.probGrid},         {"maxTermDepth", b.maxTermDepth}, {"ceiling", b.ceiling}};
}
void from_json(const json& j, Bounds& b) {
  j.at("maxWordLen").get_to(b.maxWordLen);
  j.at("maxSetSize").get_to(b.maxSetSize);
  j.at("maxMultiplicity").get_to(b.maxMultiplicity);
  j.at("probGrid").get_to(b.probGrid);
  j.at("maxTermDepth").get_to(b.maxTermDepth);
  j.at("ceiling").get_to(b.ceiling);
}

void to_json(json& j, const Evaluation& e) {
  j = json{{"stage", e.stage}, {"monad", e.monad}, {"program", e.program}, {"value", e.value},
           {"rendering", e.rendering}};
}
void from_json(const json& j, Evaluation& e) {
  j.at("stage").get_to(e.stage);
  j.at("monad").get_to(e.monad);
  j.at("program").get_to(e.program);
  j.at("value").get_to(e.value);
  j.at("rendering").get_to(e.rendering);
}

}  // namespace doc

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> literals(std::span<const Value> vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(canonical(v));
  return out;
}

std::optional<doc::Witness> witness(const std::optional<DiagramWitness>& w) {
  if (!w) return std::nullopt;
  return doc::Witness{literals(w->inputs), canonical(w->lhs), canonical(w->rhs)};
}

std::optional<doc::Witness> witness(const std::optional<HoldsWitness>& w) {
  if (!w) return std::nullopt;
  std::vector<std::string> inputs = literals(w->valuation);
  for (const auto& [k, r] : w->params) inputs.push_back(k + "=" + r.str());
  return doc::Witness{std::move(inputs), canonical(w->lhs), canonical(w->rhs)};
}

doc::Probe probe(const ProbeResult& p) {
  return {p.property, probe_status_name(p.status), p.holds(), p.inputs, p.fragment, witness(p.witness)};
}

doc::Verdict verdict(const Verdict& v) {
  doc::Verdict out{to_string(v.equation), class_name(v.cls), verdict_name(v.status), v.theorem, v.evidence, {}};
  if (const auto& c = v.counterexample) {
    doc::Counterexample d;
    d.model = c->model == Counterexample::Model::Table ? "table" : "free";
    d.carrier = literals(c->carrier);
    d.tables = c->tables;
    d.valuation = literals(c->valuation);
    for (const auto& [k, r] : c->params) d.params[k] = r.str();
    d.lhs = canonical(c->lhs);
    d.rhs = canonical(c->rhs);
    out.counterexample = std::move(d);
  }
  return out;
}

std::vector<std::string> equations(std::span<const Equation> eqs) {
  std::vector<std::string> out;
  for (const auto& e : eqs) out.push_back(to_string(e));
  return out;
}

doc::Layer layer(const LayerSpec& l) {
  doc::Layer out{l.name, l.role == LayerRole::InnerSeed ? "seed" : "outer", normalizer_name(l.normalizer), {},
                 equations(l.theory.equations)};
  for (const auto& op : l.theory.signature.ops())
    out.operations.push_back(op.name + "/" + std::to_string(op.arity) + (op.parameterized ? " param" : ""));
  return out;
}

doc::Stage stage(const StageReport& s) {
  doc::Stage out;
  out.index = s.index;
  out.layer = s.layer;
  out.outer_monad = s.outer_monad;
  out.inner_monad = s.inner_monad;
  out.inner_kind = s.inner_kind ? normalizer_name(*s.inner_kind) : "";
  out.profile = {probe(s.profile.symmetric), probe(s.profile.relevant), probe(s.profile.affine)};
  for (const auto& v : s.verdicts) out.verdicts.push_back(verdict(v));
  out.kept = equations(s.weakened.kept);
  for (const auto& d : s.weakened.dropped) out.dropped.push_back(to_string(d.equation));
  out.generated = equations(s.weakened.generated);
  for (const auto& r : s.law_reports) out.laws.push_back({r.check, r.ok, r.inputs, r.fragment, witness(r.witness)});
  for (const auto& c : s.axiom_checks)
    out.axioms.push_back({c.origin, to_string(c.equation), c.result.holds, c.carrier_size,
                          c.result.valuations_checked, witness(c.result.witness)});
  out.theory = equations(s.output.equations);
  out.retained_unknown = s.retained_unknown;
  out.alarm = s.alarm;
  out.verified = s.verified();
  out.narrative = s.narrative;
  return out;
}

}  // namespace

ReportDocument make_report(std::string command, const CompositionReport& report, const std::vector<std::string>& atoms,
                           const Bound& b) {
  ReportDocument d;
  d.command = std::move(command);
  d.exit_code = report.exit_code();
  d.bounds = doc::from_bound(b);
  d.atoms = atoms;
  for (const auto& l : report.layers) d.layers.push_back(layer(l));
  for (const auto& s : report.stages) d.stages.push_back(stage(s));
  d.final_theory = equations(report.final_theory.equations);
  return d;
}

std::string to_json(const ReportDocument& d) {
  json j{{"command", d.command},   {"exit_code", d.exit_code}, {"bounds", d.bounds},
         {"atoms", d.atoms},       {"layers", d.layers},       {"stages", d.stages},
         {"final_theory", d.final_theory}};
  doc::put_opt(j, "evaluation", d.evaluation);
  return j.dump(2) + "\n";
}

ReportDocument from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    ReportDocument d;
    j.at("command").get_to(d.command);
    j.at("exit_code").get_to(d.exit_code);
    j.at("bounds").get_to(d.bounds);
    j.at("atoms").get_to(d.atoms);
    j.at("layers").get_to(d.layers);
    j.at("stages").get_to(d.stages);
    j.at("final_theory").get_to(d.final_theory);
    doc::get_opt(j, "evaluation", d.evaluation);
    return d;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

Bound parse_bounds(std::string_view json_text) {
  Bound b;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw Error("bounds file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "maxWordLen") value.get_to(b.maxWordLen);
      else if (key == "maxSetSize") value.get_to(b.maxSetSize);
      else if (key == "maxMultiplicity") value.get_to(b.maxMultiplicity);
      else if (key == "maxTermDepth") value.get_to(b.maxTermDepth);
      else if (key == "ceiling") value.get_to(b.ceiling);
      else if (key == "probGrid") {
        b.probGrid.clear();
        for (const auto& r : value) b.probGrid.push_back(Rational::parse(r.get<std::string>()));
      } else {
        throw Error("unknown bound '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed bounds file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(std::string("malformed bounds file: ") + e.what());
  }
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw Error(std::string("invalid bounds: ") + e.what());
  }
  return b;
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string pad(std::string s, std::size_t width) {
  const auto n = utf8::length(s);
  if (n < width) s.append(width - n, ' ');
  return s;
}

void witness_lines(std::string& out, const std::optional<doc::Witness>& w, const char* indent) {
  if (!w) return;
  out += indent;
  out += "witness:";
  for (const auto& i : w->inputs) out += " " + i;
  out += "\n";
  out += indent + std::string("  lhs ") + w->lhs + "\n";
  out += indent + std::string("  rhs ") + w->rhs + "\n";
}

}  // namespace

std::string to_text(const ReportDocument& d) {
  std::string out;
  if (d.evaluation) {
    out += d.evaluation->rendering;
    if (out.empty() || out.back() != '\n') out += "\n";
    return out;
  }
  out += d.command + ": ";
  for (std::size_t i = 0; i < d.layers.size(); ++i)
    out += (i ? " | " : "") + d.layers[i].name + " (" + d.layers[i].normalizer + ")";
  out += "\n";
  std::string grid;
  for (const auto& g : d.bounds.probGrid) grid += (grid.empty() ? "" : ",") + g;
  out += "bounds: maxWordLen=" + std::to_string(d.bounds.maxWordLen) + " maxSetSize=" +
         std::to_string(d.bounds.maxSetSize) + " maxMultiplicity=" + std::to_string(d.bounds.maxMultiplicity) +
         " probGrid={" + grid + "} maxTermDepth=" + std::to_string(d.bounds.maxTermDepth) + "\n";

  for (const auto& s : d.stages) {
    out += "\nstage " + std::to_string(s.index) + ": " + s.layer + " = " + s.outer_monad + " over " +
           s.inner_monad + (s.inner_kind.empty() ? "" : " [" + s.inner_kind + "]") + "\n";
    out += "  profile:";
    for (const auto& p : s.profile) out += " " + p.property + "=" + (p.holds ? "yes" : "no") + " (" + p.status + ")";
    out += "\n";
    std::size_t width = 0;
    for (const auto& v : s.verdicts) width = std::max(width, utf8::length(v.equation));
    for (const auto& v : s.verdicts) {
      out += "  " + pad(v.equation, width) + "  " + v.status;
      if (!v.theorem.empty()) out += " (" + v.theorem + ")";
      out += "\n";
      if (v.status == "FALSIFIED" || v.status == "UNKNOWN")
        for (const auto& e : v.evidence) out += "      " + e + "\n";
    }
    if (!s.laws.empty()) {
      out += "  laws:\n";
      for (const auto& c : s.laws) {
        out += "    " + pad(c.name, 26) + (c.ok ? "PASS" : "FAIL") + "  " + std::to_string(c.inputs) + " inputs\n";
        witness_lines(out, c.witness, "      ");
      }
    }
    if (!s.axioms.empty()) {
      std::size_t held = 0;
      for (const auto& a : s.axioms) held += a.holds;
      out += "  axioms in the composite: " + std::to_string(held) + "/" + std::to_string(s.axioms.size()) + " hold\n";
      for (const auto& a : s.axioms)
        if (!a.holds) {
          out += "    FAIL " + a.origin + " " + a.equation + "\n";
          witness_lines(out, a.witness, "      ");
        }
    }
    out += "  status: " + std::string(s.verified ? "verified" : "UNVERIFIED") + "\n";
    for (const auto& n : s.narrative)
      if (n.rfind("ALARM", 0) == 0 || n.rfind("UNKNOWN", 0) == 0) out += "  " + n + "\n";
  }
  out += "\nfinal theory (" + std::to_string(d.final_theory.size()) + " equations):\n";
  for (const auto& e : d.final_theory) out += "  " + e + "\n";
  out += "exit " + std::to_string(d.exit_code) + "\n";
  return out;
}

}  // namespace mlayers
