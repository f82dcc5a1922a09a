// OpenMP kernels against their serial references on the S₄ corpus file.
#include <benchmark/benchmark.h>

#include "commands.hpp"
#include "gammalat/resolutions.hpp"

using namespace gammalat;

namespace {

const cli::Loaded& s4() {
  static const cli::Loaded w = cli::load(GAMMALAT_CORPUS_DIR "/S4.json", cli::Limits{});
  return w;
}

const char* const names[] = {"regular", "J", "J_dual"};

template <class F>
void run_on(benchmark::State& state, F f) {
  const auto& m = cli::lattice_named(s4(), names[state.range(0)]);
  state.SetLabel(names[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(f(m));
}

void BM_fingerprint(benchmark::State& s) { run_on(s, [](const LatticePtr& m) { return fingerprint(m); }); }
void BM_fingerprint_serial(benchmark::State& s) {
  run_on(s, [](const LatticePtr& m) { return fingerprint_serial(m); });
}
void BM_is_coflasque(benchmark::State& s) { run_on(s, [](const LatticePtr& m) { return is_coflasque(m).holds; }); }
void BM_is_coflasque_serial(benchmark::State& s) {
  run_on(s, [](const LatticePtr& m) { return is_coflasque_serial(m).holds; });
}

}  // namespace

BENCHMARK(BM_fingerprint)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fingerprint_serial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_is_coflasque)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_is_coflasque_serial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
