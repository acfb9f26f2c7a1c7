// Grid oracle: OpenMP kernel against the serial reference.
//
//   build/bench/oracle_bench --benchmark_filter=Example2

#include <benchmark/benchmark.h>

#include "mosip/oracle.h"
#include "mosip/problem.h"

namespace mosip {
namespace {

struct Case {
  MosipProblem problem;
  Vec x;
  Box box;
};

Case example_case(const char* name, std::size_t n) {
  return {builtin_problem(name, 20), Vec(n, Rational(0)), Box::cube(n, -2, 2)};
}

template <OracleReport (*Classify)(const MosipProblem&, const Vec&, const Box&, std::size_t)>
void run(benchmark::State& state, const Case& c) {
  const auto res = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    OracleReport r = Classify(c.problem, c.x, c.box, res);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.x.size() == 1 ? res : res * res));
}

void BM_Example1Parallel(benchmark::State& s) { run<classify_grid>(s, example_case("example1", 1)); }
void BM_Example1Serial(benchmark::State& s) { run<classify_grid_serial>(s, example_case("example1", 1)); }
void BM_Example2Parallel(benchmark::State& s) { run<classify_grid>(s, example_case("example2", 2)); }
void BM_Example2Serial(benchmark::State& s) { run<classify_grid_serial>(s, example_case("example2", 2)); }

BENCHMARK(BM_Example1Parallel)->Arg(1001)->Arg(100001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Example1Serial)->Arg(1001)->Arg(100001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Example2Parallel)->Arg(81)->Arg(401)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Example2Serial)->Arg(81)->Arg(401)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mosip

BENCHMARK_MAIN();
