// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace sdris {

using Rng = std::mt19937_64;

/// splitmix64 step; used as a mixing function for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Purpose tags keep the derived random streams disjoint.
enum class StreamPurpose : std::uint64_t {
  kScene = 0x5343454eULL,    // per-trial channel realization
  kSymbols = 0x53594d42ULL,  // per-trial payload symbols
  kNoise = 0x4e4f4953ULL,    // per-(trial, SNR point) receiver noise
  kDither = 0x44495448ULL,   // per-(trial, scheme) dither signal
};

/// Counter-based seed derivation: the resulting stream depends only on
/// (master, purpose, a, b), never on scheduling, so any parallel execution
/// order reproduces the same draws.
inline std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = splitmix64(master ^ static_cast<std::uint64_t>(purpose));
  h = splitmix64(h ^ (a * 0xd6e8feb86659fd93ULL));
  h = splitmix64(h ^ (b * 0xc2b2ae3d27d4eb4fULL));
  return h;
}

}  // namespace sdris
