#include <benchmark/benchmark.h>

#include "sgdyn/convolution.hpp"
#include "sgdyn/operators.hpp"
#include "sgdyn/suites.hpp"

using namespace sgdyn;

static void BM_ScalarMul(benchmark::State& state) {
  Scalar a = Scalar::sqrt(Rational(2)) + Scalar::radical(Rational(1, 3), Rational(6));
  Scalar b = Scalar::sqrt(Rational(3)) + Scalar(Rational(5, 7));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_ScalarMul);

static void BM_SquareFreeSplit(benchmark::State& state) {
  long long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(square_free_split(n));
}
BENCHMARK(BM_SquareFreeSplit)->Arg(720)->Arg(123456)->Arg(999999937);

static void BM_CanonicalPoints(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(canonical_points(state.range(0)));
}
BENCHMARK(BM_CanonicalPoints)->Arg(3)->Arg(4)->Arg(5);

static void BM_CaPreimages(benchmark::State& state) {
  Dictionary d = counterexample_dictionary();
  Point y = Point::parse("011|0110");
  for (auto _ : state) benchmark::DoNotOptimize(ca_preimages(d, y));
}
BENCHMARK(BM_CaPreimages);

static void BM_IterateWeight(benchmark::State& state) {
  Endo t = Endo::cellular(ledrappier_dictionary());
  Point x = Point::parse("01|011");
  for (auto _ : state) benchmark::DoNotOptimize(iterate_weight(t, state.range(0), x));
}
BENCHMARK(BM_IterateWeight)->Arg(1)->Arg(3);

static void BM_CoherenceSweep(benchmark::State& state) {
  Cocycle w = product_cocycle(ledrappier_action());
  for (auto _ : state) benchmark::DoNotOptimize(check_coherence(w, state.range(0), 2));
}
BENCHMARK(BM_CoherenceSweep)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_ConvolutionChain(benchmark::State& state) {
  Action led = ledrappier_action();
  Cocycle w = product_cocycle(led);
  Convolver cv(led, w);
  auto g = led.group();
  auto sg = cv.sigma(g.from_vector({1, -1}));
  auto sgi = cv.sigma(g.from_vector({-1, 1}));
  std::vector<AlgebraElement> chain;
  chain.insert(chain.end(), sg.begin(), sg.end());
  chain.insert(chain.end(), sgi.begin(), sgi.end());
  chain.insert(chain.end(), sg.begin(), sg.end());
  Triple e{Point::parse("0|1"), g.from_vector({1, -1}), Point::parse("|01")};
  for (auto _ : state) benchmark::DoNotOptimize(cv.convolve(chain, e));
}
BENCHMARK(BM_ConvolutionChain);

static void BM_InteractionEval(benchmark::State& state) {
  Action led = ledrappier_action();
  Cocycle w = product_cocycle(led);
  Evaluator ev(led, w);
  Observable expr = Observable::interaction(
      led.group().from_vector({1, -1}),
      Observable::cylinder(CylinderFunction::indicator("01")));
  auto pts = canonical_points(3);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.eval(expr, pts[i]));
    i = (i + 1) % pts.size();
  }
}
BENCHMARK(BM_InteractionEval);

BENCHMARK_MAIN();
