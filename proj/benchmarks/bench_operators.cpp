#include <benchmark/benchmark.h>

#include "desk.hpp"
#include "pcops/iteration.hpp"
#include "pcops/sampling.hpp"
#include "pcops/verification.hpp"

using namespace pcops;

namespace {

const desk::Instance& instance(std::size_t i) {
  static const std::vector<desk::Instance> all = desk::methods_at_defaults();
  return all.at(i);
}

void BM_Apply(benchmark::State& state) {
  const desk::Instance& inst = instance(static_cast<std::size_t>(state.range(0)));
  const OperatorExpr T = build(inst.spec);
  GaussianSampler s(T.dim(), 1);
  const Vector x = s.next();
  for (auto _ : state) benchmark::DoNotOptimize(T.apply(x));
  state.SetLabel(inst.name);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Apply)->DenseRange(0, 10);

void BM_Iterate1000(benchmark::State& state) {
  const desk::Instance& inst = instance(static_cast<std::size_t>(state.range(0)));
  const OperatorExpr T = build(inst.spec);
  const Point x0 = desk::start_point(T.dim());
  for (auto _ : state) benchmark::DoNotOptimize(iterate(T, x0, 1000, 0.0));
  state.SetLabel(inst.name);
}
BENCHMARK(BM_Iterate1000)->DenseRange(0, 10)->Unit(benchmark::kMicrosecond);

void BM_CheckDefinition(benchmark::State& state) {
  const OperatorExpr T = build(instance(9).spec);  // admm
  for (auto _ : state) benchmark::DoNotOptimize(check_definition(T, 1.0, 1000, 1));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_CheckDefinition)->Unit(benchmark::kMillisecond);

void BM_QuadraticProx(benchmark::State& state) {
  const Index n = state.range(0);
  const SmoothConvexFn q = spd_quadratic(linear_spectrum(n, 0.1, 2.0), 5);
  const OperatorExpr P = prox_operator(ProxableFn::quadratic(q.A(), q.b()), 1.0, n);
  const Vector x = Vector::Ones(n);
  for (auto _ : state) benchmark::DoNotOptimize(P.apply(x));
}
BENCHMARK(BM_QuadraticProx)->RangeMultiplier(4)->Range(8, 512);

}  // namespace

BENCHMARK_MAIN();
