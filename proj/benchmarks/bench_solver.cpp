#include <benchmark/benchmark.h>

#include "lllshift/certificate.hpp"
#include "lllshift/solver.hpp"
#include "lllshift/verifier.hpp"

using namespace lllshift;

namespace {

const ParameterCertificate& certificate() {
  static const ParameterCertificate cert = derive_certificate(1);
  return cert;
}

Instance z2_instance(std::uint64_t n_max) {
  return Instance::build(GroupKind::Z2, Pattern{{GroupElement::lattice(0, 0), 1}}, certificate().N, certificate().M,
                         n_max);
}

void BM_CompileZ2(benchmark::State& state) {
  const auto side = state.range(0);
  const auto window = std::make_shared<const Window>(Window::box(0, side - 1, 0, side - 1));
  const Instance inst = z2_instance(10);
  for (auto _ : state) {
    WindowProblem problem(window, inst);
    benchmark::DoNotOptimize(problem.constraint_count());
  }
}
BENCHMARK(BM_CompileZ2)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveZ2(benchmark::State& state) {
  const auto side = state.range(0);
  const auto window = std::make_shared<const Window>(Window::box(0, side - 1, 0, side - 1));
  const WindowProblem problem(window, z2_instance(10));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const SolveReport r = problem.solve(++seed);
    benchmark::DoNotOptimize(r.resample_count);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(window->size()));
}
BENCHMARK(BM_SolveZ2)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

// Toy instance with frequent resampling: no 00, plus short period constraints.
void BM_SolveDenseZ(benchmark::State& state) {
  const auto window = std::make_shared<const Window>(Window::interval(0, state.range(0) - 1));
  const Instance inst = Instance::build(GroupKind::Z, Pattern{{GroupElement::integer(0), 1}}, 2, 1, 2);
  const WindowProblem problem(window, inst);
  std::uint64_t seed = 0, resamples = 0;
  for (auto _ : state) {
    const SolveReport r = problem.solve(++seed);
    resamples += r.resample_count;
  }
  state.counters["resamples/solve"] =
      benchmark::Counter(static_cast<double>(resamples) / static_cast<double>(state.iterations()));
}
BENCHMARK(BM_SolveDenseZ)->Arg(256)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_VerifyZ2(benchmark::State& state) {
  const auto window = std::make_shared<const Window>(Window::box(0, 63, 0, 63));
  const Instance inst = z2_instance(10);
  const SolveReport r = WindowProblem(window, inst).solve(1);
  for (auto _ : state) {
    const VerificationReport report = full_report(r.assignment, inst, 10);
    benchmark::DoNotOptimize(report.checked.period_checked);
  }
}
BENCHMARK(BM_VerifyZ2)->Unit(benchmark::kMillisecond);

void BM_DeriveCertificate(benchmark::State& state) {
  for (auto _ : state) {
    const ParameterCertificate cert = derive_certificate(static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(cert.M);
  }
}
BENCHMARK(BM_DeriveCertificate)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
