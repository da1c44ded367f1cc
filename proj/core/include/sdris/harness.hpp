// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdris/link.hpp"
#include "sdris/precoder.hpp"
#include "sdris/scene.hpp"

namespace sdris {

/// One scheme entry of an experiment: the scheme plus its alphabet size and
/// overload amplitude where applicable. Dithering is implied by the scheme.
struct SchemeSpec {
  Scheme scheme = Scheme::kZf;
  int n_levels = 0;  // 0 for schemes without a discrete alphabet
  std::optional<double> overload_amplitude;

  std::string id() const { return std::string(scheme_id(scheme)); }
  bool uses_alphabet() const;
  bool is_sigma_delta() const;
  bool dithered() const { return scheme == Scheme::kOlSdZfDither; }
  /// Overloaded sigma-delta schemes default to amplitude sqrt(2).
  double resolved_overload_amplitude() const;
  /// This scheme's precoder output changes with the noise level (the
  /// sigma-delta gain compensation depends on sigma_v), so it cannot be
  /// cached across SNR points.
  bool depends_on_sigma_v() const { return is_sigma_delta(); }
  void validate() const;
};

struct ExperimentConfig {
  ScenarioConfig scenario;
  std::vector<SchemeSpec> schemes;
  std::vector<double> snr_grid_db;
  int n_trials = 1000;
  int block_len = 500;  // T
  int constellation_order = 16;
  std::uint64_t master_seed = 1;
  int n_threads = 0;          // 0 = hardware concurrency
  int early_stop_errors = 0;  // 0 = disabled; else stop a point at >= this many errors
  std::optional<double> steer_target_deg;  // default: user sector midpoint
  double sigma_q_sq = 1.0 / 3.0;
  GainForm gain_form = GainForm::kMagnitudeSquared;

  double steer_target_or_default() const {
    return steer_target_deg.value_or(scenario.sector_midpoint_deg());
  }
  void validate() const;
};

/// BER estimate of one scheme over the SNR grid.
struct BerCurve {
  std::string scheme;
  int n_levels = 0;
  std::vector<double> snr_db;
  std::vector<std::uint64_t> bit_errors;
  std::vector<std::uint64_t> total_bits;
  std::vector<double> ber;
  std::vector<int> trials;   // trials contributing to each point
  std::vector<double> wall_s;  // accumulated wall-clock spent per point
};

/// Runs the full protocol: per trial draw a fading block (scene + symbols),
/// precode every scheme, transmit at every SNR point with noise draws shared
/// across schemes, detect and accumulate bit errors.
///
/// Deterministic for a fixed master seed independent of n_threads: every
/// random stream is derived from (master_seed, purpose, trial, index), trials
/// are scheduled in fixed-size chunks and all accumulators are integers.
/// A failing trial aborts the run with the trial index and seed in the error.
std::vector<BerCurve> run_experiment(const ExperimentConfig& config);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// 95% (by default) Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t total,
                               double z = 1.959963984540054);

/// Human-readable comparison table with Wilson confidence intervals.
std::string summarize(const std::vector<BerCurve>& curves);

/// Results CSV, one row per (scheme, SNR) point. Header:
/// scheme,L,snr_db,bit_errors,total_bits,ber,trials,block_len,n_elements,n_users,seed
std::string curves_to_csv(const std::vector<BerCurve>& curves, const ExperimentConfig& config);

}  // namespace sdris
