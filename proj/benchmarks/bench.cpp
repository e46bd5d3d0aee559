#include <benchmark/benchmark.h>

#include <random>

#include "anosov/boxes.hpp"
#include "anosov/classify.hpp"
#include "anosov/group.hpp"
#include "anosov/limitcurve.hpp"

using namespace anosov;
using cartan::CoxeterRep;
using cartan::TriangleSignature;

namespace {

CoxeterRep barbot(const TriangleSignature& sig, double t) {
  return cartan::build_representation(cartan::normal_form(sig, cartan::barbot_type(sig), t));
}

void BM_Eig3(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<projlin::Mat3> ms(256);
  for (auto& m : ms)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = u(rng);
  size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(projlin::eig3(ms[k++ % ms.size()]));
}
BENCHMARK(BM_Eig3);

void BM_Classify(benchmark::State& state) {
  const TriangleSignature sig{3, 3, 5};
  const auto c = cartan::normal_form(sig, cartan::barbot_type(sig), 7.0);
  for (auto _ : state) benchmark::DoNotOptimize(classify::classify(c));
}
BENCHMARK(BM_Classify);

void BM_EvaluateWord(benchmark::State& state) {
  const auto rep = barbot({3, 3, 5}, 7.0);
  const auto words = group::enumerate_elements(rep.sig(), 10);
  group::EvalCache cache;
  const bool cached = state.range(0) != 0;
  size_t k = 0;
  for (auto _ : state) {
    const auto& w = words[k++ % words.size()].word;
    benchmark::DoNotOptimize(group::evaluate(w, rep, cached ? &cache : nullptr));
  }
  state.SetLabel(cached ? "cached" : "uncached");
}
BENCHMARK(BM_EvaluateWord)->Arg(0)->Arg(1);

void BM_Xi1(benchmark::State& state) {
  const limitcurve::BoundaryMap map(barbot({3, 3, 5}, 2 * classify::t_red({3, 3, 5})));
  const int depth = static_cast<int>(state.range(0));
  double a = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(map.eval(hyperbolic::CirclePoint{a}, depth));
    a += 0.37;
    if (a > 6.28) a -= 6.28;
  }
}
BENCHMARK(BM_Xi1)->Arg(30)->Arg(60);

void BM_SampleCurve(benchmark::State& state) {
  const auto rep = barbot({3, 3, 5}, 2 * classify::t_red({3, 3, 5}));
  limitcurve::CurveOptions opt;
  opt.samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(limitcurve::sample_curve(rep, opt));
}
BENCHMARK(BM_SampleCurve)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_VerifyInclusions(benchmark::State& state) {
  const TriangleSignature sig = state.range(0) == 0 ? TriangleSignature{3, 3, 5} : TriangleSignature{5, 5, 5};
  const auto cfg = boxes::build_config(barbot(sig, classify::t_red(sig)));
  const auto bx = boxes::build_boxes(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(boxes::verify_inclusions(cfg, bx));
  state.SetLabel(sig.str());
}
BENCHMARK(BM_VerifyInclusions)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
