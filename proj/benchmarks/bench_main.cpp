#include <benchmark/benchmark.h>

#include "sixdelta/correlators.hpp"
#include "sixdelta/mb_engine.hpp"
#include "sixdelta/oracles.hpp"
#include "sixdelta/propagators.hpp"
#include "sixdelta/specfun.hpp"

using namespace sixdelta;

namespace {

ConformalWeight w2(double rho) { return ConformalWeight::type_one(rho, 2); }

const SixLabels& labels() {
  static const SixLabels L = SixLabels::type_one({1.0, 0.7, 1.3, 0.9, 1.1, 0.8}, 2);
  return L;
}

void BM_Gamma(benchmark::State& s) {
  Complex z(1.0, 0.3);
  for (auto _ : s) {
    benchmark::DoNotOptimize(specfun::log_gamma_c(z));
    z += Complex(0.0, 1e-6);
  }
}
BENCHMARK(BM_Gamma);

void BM_Hyp2f1(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(specfun::hyp2f1(Complex(1.0, 0.5), Complex(0.3, -1.0), Complex(2.0, 0.5), 0.7));
}
BENCHMARK(BM_Hyp2f1);

void BM_BulkToBulk(benchmark::State& s) {
  const ConformalWeight w(Complex(1.3, 0.7), 3);
  for (auto _ : s) benchmark::DoNotOptimize(bulk_to_bulk(w, 1.7));
}
BENCHMARK(BM_BulkToBulk);

void BM_GammaLattice(benchmark::State& s) {
  ContourConfig cfg;
  cfg.T = 4.0;
  cfg.n = static_cast<int>(s.range(0));
  const std::vector<Complex> offsets = {Complex(0.3, 0.1), Complex(1.1, -0.4), Complex(0.7, 0.9)};
  for (auto _ : s) benchmark::DoNotOptimize(gamma_lattice(cfg, offsets));
}
BENCHMARK(BM_GammaLattice)->Arg(64)->Arg(256);

void BM_MbExp(benchmark::State& s) {
  ContourConfig cfg;
  cfg.tol = 1e-10;
  for (auto _ : s) benchmark::DoNotOptimize(mb_exp(2.0, cfg));
}
BENCHMARK(BM_MbExp);

void BM_IUV(benchmark::State& s) {
  ContourConfig cfg;
  cfg.tol = 1e-7;
  for (auto _ : s) benchmark::DoNotOptimize(i_uv(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), 0.5, 0.7, cfg));
}
BENCHMARK(BM_IUV)->Unit(benchmark::kMillisecond);

// Fixed grid so the lattice and direct paths do the same work.
void BM_RacahFixed(benchmark::State& s) {
  ContourConfig cfg;
  cfg.T = 2.0;
  cfg.n = 24;
  cfg.adaptive = false;
  cfg.use_lattice = s.range(0) != 0;
  for (auto _ : s) benchmark::DoNotOptimize(racah(labels(), cfg));
  s.SetLabel(cfg.use_lattice ? "lattice" : "direct");
}
BENCHMARK(BM_RacahFixed)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_RacahAdaptive(benchmark::State& s) {
  ContourConfig cfg;
  cfg.tol = 1e-3;
  for (auto _ : s) benchmark::DoNotOptimize(racah(labels(), cfg));
}
BENCHMARK(BM_RacahAdaptive)->Unit(benchmark::kMillisecond);

void BM_ThreePointOracle(benchmark::State& s) {
  const TripleWeights t(ConformalWeight(1.3, 2), ConformalWeight(1.6, 2), ConformalWeight(1.9, 2));
  oracle::McConfig mc;
  mc.samples = 1 << 18;
  const BoundaryPoint x1({0.0, 0.0}), x2({1.0, 0.0}), x3({0.3, 0.8});
  for (auto _ : s) benchmark::DoNotOptimize(oracle::three_point_oracle(t, x1, x2, x3, mc));
}
BENCHMARK(BM_ThreePointOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
