// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "sdris/quantizer.hpp"
#include "sdris/rng.hpp"
#include "sdris/sigma_delta.hpp"

namespace {

Eigen::VectorXcd random_input(int n, double amplitude, std::uint64_t seed) {
  sdris::Rng rng(seed);
  std::uniform_real_distribution<double> mag(0.0, amplitude);
  std::uniform_real_distribution<double> phase(-sdris::kPi, sdris::kPi);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = std::polar(mag(rng), phase(rng));
  return v;
}

void BM_Quantize(benchmark::State& state) {
  const auto alphabet = sdris::PhaseAlphabet::discrete(static_cast<int>(state.range(0)));
  const auto input = random_input(4096, 1.4, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sdris::quantize(input(static_cast<Eigen::Index>(i)), alphabet));
    i = (i + 1) & 4095;
  }
}
BENCHMARK(BM_Quantize)->Arg(4)->Arg(16)->Arg(64)->Arg(1024);

void BM_Modulate(benchmark::State& state) {
  const int n = 512;
  const auto alphabet = sdris::PhaseAlphabet::discrete(static_cast<int>(state.range(0)));
  const auto config = sdris::ModulatorConfig::with_alphabet(alphabet, 0.3);
  const auto input = random_input(n, alphabet.no_overload_amplitude(), 11);
  Eigen::VectorXcd out(n), err(n);
  for (auto _ : state) {
    sdris::modulate_into(input, config, out, err);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Modulate)->Arg(4)->Arg(8)->Arg(16)->Arg(64);

}  // namespace
