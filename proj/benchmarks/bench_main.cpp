#include <benchmark/benchmark.h>

#include <complex>

#include "sigrig/chargenus.hpp"
#include "sigrig/lattice.hpp"
#include "sigrig/theta.hpp"
#include "sigrig/thomfix.hpp"

using namespace sigrig;

namespace {

const cplx kTau{0.3, 0.9};

void BM_SigmaEval(benchmark::State& state) {
  Lattice L(kTau);
  int q_terms = static_cast<int>(state.range(0));
  cplx z = 0.23 * L.g1() + 0.31 * L.g2();
  for (auto _ : state)
    benchmark::DoNotOptimize(sigma_eval(z, L, q_terms));
}
BENCHMARK(BM_SigmaEval)->Arg(40)->Arg(60)->Arg(120);

void BM_SigmaJet(benchmark::State& state) {
  Lattice L(kTau);
  int order = static_cast<int>(state.range(0));
  cplx z = 0.23 * L.g1() + 0.31 * L.g2();
  for (auto _ : state)
    benchmark::DoNotOptimize(sigma_jet(z, L, order));
}
BENCHMARK(BM_SigmaJet)->Arg(2)->Arg(4)->Arg(8);

void BM_WittenExpansion(benchmark::State& state) {
  ManifoldData hp2;
  hp2.dimension = 8;
  hp2.pontryagin[{2}] = rational(7);
  hp2.pontryagin[{1, 1}] = rational(4);
  int q_order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(witten_genus_q(hp2, q_order));
}
BENCHMARK(BM_WittenExpansion)->Arg(4)->Arg(10)->Arg(20);

FixedComponent odd_component() {
  FixedComponent F;
  F.ring = PolyRing::make({}, {}, 0);
  F.ring.set_integral({});
  F.T = {{1, 9, std::vector<std::vector<long>>(9)}};
  F.V = {{3, 1, std::vector<std::vector<long>>(1)}};
  return F;
}

void BM_TransferCheck(benchmark::State& state) {
  Lattice L(kTau);
  auto th = sigma_theta(L);
  auto F = odd_component();
  auto sp = make_special_point(L, L.g1() / 3.0, 3);
  auto zs = default_samples(L, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(transfer_check(F, sp, zs, th));
}
BENCHMARK(BM_TransferCheck)->Arg(5)->Arg(20);

void BM_AdaptedCover(benchmark::State& state) {
  Lattice L(kTau);
  int n = static_cast<int>(state.range(0));
  auto special = torsion_points(L, n);
  for (auto _ : state) {
    auto cover = build_adapted_cover(special, L);
    benchmark::DoNotOptimize(verify_adapted(cover, L));
  }
}
BENCHMARK(BM_AdaptedCover)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
