#include <mgc/ansatz.hpp>
#include <mgc/cohomology.hpp>
#include <mgc/eval.hpp>
#include <mgc/reference.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace mgc;

void BM_CanonicalFormListing(benchmark::State& state) {
  const GraphSum listing = reference::theorem_listing();
  for (auto _ : state)
    for (const auto& [g, c] : listing.terms()) benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_CanonicalFormListing);

void BM_EvaluateGamma3Nambu3(benchmark::State& state) {
  const GraphSum flow = gamma3_graphs();
  const Contents contents = nambu_contents(3);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(flow, contents));
}
BENCHMARK(BM_EvaluateGamma3Nambu3)->Unit(benchmark::kMillisecond);

void BM_EvaluateListing(benchmark::State& state) {
  const GraphSum listing = reference::theorem_listing();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(listing));
}
BENCHMARK(BM_EvaluateListing)->Unit(benchmark::kMillisecond);

void BM_SchoutenNambu3(benchmark::State& state) {
  const MultiVector p = nambu_bivector(3);
  const MultiVector x = to_multivector(evaluate(reference::theorem_listing()), 1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(schouten(p, x));
}
BENCHMARK(BM_SchoutenNambu3)->Unit(benchmark::kMillisecond);

void BM_GenerateAnsatz(benchmark::State& state) {
  AnsatzSpec spec;
  spec.dim = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate(spec, 0));
}
BENCHMARK(BM_GenerateAnsatz)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Solve3D(benchmark::State& state) {
  const MultiVector p = nambu_bivector(3);
  const MultiVector q = Rational(reference::kListingScale) * gamma3_flow(p);
  const std::vector<Graph> ansatz = vanish_filter(generate(AnsatzSpec{}, 0).graphs, 0);
  const LinearSystem sys = assemble_coboundary(q, p, ansatz_fields(ansatz, 0), SchoutenSign::standard, 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys));
}
BENCHMARK(BM_Solve3D)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
