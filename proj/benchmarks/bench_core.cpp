#include <benchmark/benchmark.h>

#include "mlayers/commands.hpp"
#include "mlayers/distlaw.hpp"

using namespace mlayers;

namespace {

const SpecFile& pnk() {
  static const SpecFile s = load_spec(std::string(MLAYERS_LAYERS_DIR) + "/probnetkat.layers");
  return s;
}

CommandOptions coarse() {
  CommandOptions o;
  o.bound.probGrid = {Rational(0), Rational(1, 2), Rational(1)};
  return o;
}

// Left-nested sum of products a;b + b;a + ... with n summands.
Value sum_of_products(std::size_t n) {
  auto leaf = [](const char* x) { return Value::leaf(Value::atom(x)); };
  Value acc = Value::app(";", std::nullopt, {leaf("a"), leaf("b")});
  for (std::size_t i = 1; i < n; ++i)
    acc = Value::app("+", std::nullopt,
                     {acc, Value::app(";", std::nullopt, {leaf(i % 2 ? "b" : "a"), leaf(i % 3 ? "c" : "a")})});
  return acc;
}

}  // namespace

static void BM_NormalizeTwoMonoids(benchmark::State& state) {
  auto q = quotient_monad(template_theory(NormalizerKind::TwoMonoidsAbsorb, default_roles()),
                          NormalizerKind::TwoMonoidsAbsorb);
  const Value term = sum_of_products(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(q->q(term));
}
BENCHMARK(BM_NormalizeTwoMonoids)->Arg(4)->Arg(16)->Arg(64);

static void BM_NormalizeIdemSemiring(benchmark::State& state) {
  auto q = quotient_monad(template_theory(NormalizerKind::IdemSemiring, default_roles()), NormalizerKind::IdemSemiring);
  const Value term = sum_of_products(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(q->q(term));
}
BENCHMARK(BM_NormalizeIdemSemiring)->Arg(4)->Arg(16)->Arg(64);

static void BM_ProfileMonad(benchmark::State& state) {
  const MonadPtr monads[] = {fin_powerset(), multiset(), fin_distribution()};
  const auto& t = *monads[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(profile_monad(t));
  state.SetLabel(t.name());
}
BENCHMARK(BM_ProfileMonad)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_CheckIdemSemiringUnderD(benchmark::State& state) {
  const auto th = template_theory(NormalizerKind::IdemSemiring, default_roles());
  const auto d = fin_distribution();
  const auto profile = profile_monad(*d);
  PreservationConfig cfg;
  cfg.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_theory(*d, profile, th, cfg));
}
BENCHMARK(BM_CheckIdemSemiringUnderD)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_VerifyDistlawWordsOverSets(benchmark::State& state) {
  const auto& seed = pnk().layers.at(0);
  const auto p = fin_powerset();
  const auto verdicts = check_theory(*p, profile_monad(*p), seed.theory);
  const auto built = build_quotient_law(quotient_monad(seed.theory, seed.normalizer), p, verdicts);
  for (auto _ : state) benchmark::DoNotOptimize(verify_distlaw(built.law));
}
BENCHMARK(BM_VerifyDistlawWordsOverSets)->Unit(benchmark::kMillisecond);

static void BM_CheckStack(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cmd_check(pnk(), coarse()));
}
BENCHMARK(BM_CheckStack)->Unit(benchmark::kMillisecond);

static void BM_ComposeStack(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cmd_compose(pnk(), coarse()));
}
BENCHMARK(BM_ComposeStack)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_EvalStageTwo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(eval_program(pnk(), "(a ⊕[1/2] b) ; (c + a) ⊕[1/4] skip", 2, coarse()));
}
BENCHMARK(BM_EvalStageTwo)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
