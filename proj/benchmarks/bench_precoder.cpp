// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "sdris/link.hpp"
#include "sdris/precoder.hpp"
#include "sdris/rng.hpp"
#include "sdris/scene.hpp"
#include "sdris/sigma_delta.hpp"

namespace {

struct Fixture {
  sdris::Scene scene;
  sdris::SymbolBlock block;
  double steer_phase;

  static Fixture make(int n_elements, int n_users, int block_len) {
    sdris::ScenarioConfig scenario;
    scenario.n_elements = n_elements;
    scenario.n_users = n_users;
    sdris::Rng rng(42);
    sdris::Scene scene = sdris::draw_scene(scenario, rng);
    const auto constellation = sdris::Constellation::qam(16);
    const auto indices = sdris::draw_symbol_indices(n_users, block_len, constellation, rng);
    const double steer = sdris::steer_phase_for(scenario.sector_midpoint_deg(),
                                                scenario.arrival_angle_deg,
                                                scenario.geometry());
    return Fixture{std::move(scene), sdris::symbols_from_indices(indices, constellation),
                   steer};
  }
};

void BM_ZfPrecode(benchmark::State& state) {
  const auto f = Fixture::make(static_cast<int>(state.range(0)), 4, 100);
  for (auto _ : state) {
    auto block = sdris::zf_precode(f.scene, f.block);
    benchmark::DoNotOptimize(block.reflections.data());
  }
}
BENCHMARK(BM_ZfPrecode)->Arg(128)->Arg(512);

void BM_SigmaDeltaZfPrecode(benchmark::State& state) {
  const auto f = Fixture::make(static_cast<int>(state.range(0)), 4, 100);
  const auto alphabet = sdris::PhaseAlphabet::discrete(4);
  for (auto _ : state) {
    auto block = sdris::sigma_delta_zf_precode(f.scene, f.block, alphabet, f.steer_phase, 0.1);
    benchmark::DoNotOptimize(block.reflections.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_SigmaDeltaZfPrecode)->Arg(128)->Arg(512);

void BM_TransmitDetect(benchmark::State& state) {
  const auto f = Fixture::make(static_cast<int>(state.range(0)), 4, 100);
  const auto constellation = sdris::Constellation::qam(16);
  const auto pb = sdris::zf_precode(f.scene, f.block);
  sdris::Rng rng(7);
  for (auto _ : state) {
    const auto received = sdris::transmit(f.scene, pb.reflections, 0.1, rng);
    const auto decided = sdris::detect(received, pb, f.scene, constellation);
    benchmark::DoNotOptimize(decided.data());
  }
}
BENCHMARK(BM_TransmitDetect)->Arg(128)->Arg(512);

}  // namespace
