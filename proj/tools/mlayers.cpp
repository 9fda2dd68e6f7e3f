// mlayers: check, compose and evaluate stacks of effect layers.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mlayers/commands.hpp"

namespace {

constexpr int kInputError = 3;
constexpr int kUnverified = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mlayers::Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t jobs_from_env() {
  const char* v = std::getenv("MLAYERS_JOBS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw mlayers::Error("MLAYERS_JOBS must be a positive integer, got '" + std::string(v) + "'");
  return static_cast<std::size_t>(n);
}

void emit(const mlayers::ReportDocument& doc, const std::string& json_path) {
  if (json_path == "-") {
    std::cout << mlayers::to_json(doc);
    return;
  }
  std::cout << mlayers::to_text(doc);
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw mlayers::Error("cannot write " + json_path);
    out << mlayers::to_json(doc);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compose equational theories of effects along distributive laws"};
  app.require_subcommand(1);

  std::string spec_path, bounds_path, json_path, program;
  bool keep_unknown = false;
  std::size_t stage = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("spec", spec_path, "layer stack (.layers file)")->required();
    sub->add_option("--bounds", bounds_path, "JSON file overriding enumeration bounds");
    sub->add_option("--json", json_path, "also write the JSON report here ('-': JSON to stdout only)");
    sub->add_flag("--keep-unknown", keep_unknown, "keep UNKNOWN equations (the stage becomes UNVERIFIED)");
  };
  auto* check = app.add_subcommand("check", "preservation verdicts for every stage");
  auto* compose = app.add_subcommand("compose", "full pipeline: weaken, build laws, verify composites");
  auto* verify = app.add_subcommand("verify-laws", "distributive-law and monad-law checks of every stage");
  auto* eval = app.add_subcommand("eval", "denotation of a closed program");
  for (auto* sub : {check, compose, verify, eval}) common(sub);
  eval->add_option("program", program, "closed term over the declared atoms")->required();
  auto* stage_opt = eval->add_option("--stage", stage, "number of outer layers to apply (default: all)");

  CLI11_PARSE(app, argc, argv);

  try {
    mlayers::CommandOptions opts;
    if (!bounds_path.empty()) opts.bound = mlayers::parse_bounds(slurp(bounds_path));
    opts.keep_unknown = keep_unknown;
    opts.jobs = jobs_from_env();
    if (stage_opt->count()) opts.stage = stage;
    const auto spec = mlayers::load_spec(spec_path);

    mlayers::CommandResult result;
    if (*check) result = mlayers::cmd_check(spec, opts);
    else if (*compose) result = mlayers::cmd_compose(spec, opts);
    else if (*verify) result = mlayers::cmd_verify_laws(spec, opts);
    else result = mlayers::cmd_eval(spec, program, opts);
    emit(result.report, json_path);
    return result.exit_code;
  } catch (const mlayers::BoundExceeded& e) {
    std::cerr << "mlayers: " << e.what() << "\n";
    return kUnverified;
  } catch (const mlayers::Inconclusive& e) {
    std::cerr << "mlayers: " << e.what() << "\n";
    return kUnverified;
  } catch (const mlayers::LawRefused& e) {
    std::cerr << "mlayers: " << e.what() << "\n";
    return kUnverified;
  } catch (const mlayers::Error& e) {
    std::cerr << "mlayers: " << e.what() << "\n";
    return kInputError;
  }
}
