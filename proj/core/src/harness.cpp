// SPDX-License-Identifier: Apache-2.0

#include "sdris/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "sdris/errors.hpp"
#include "sdris/rng.hpp"
#include "sdris/sigma_delta.hpp"

namespace sdris {

bool SchemeSpec::uses_alphabet() const {
  return scheme == Scheme::kZfDce || is_sigma_delta();
}

bool SchemeSpec::is_sigma_delta() const {
  return scheme == Scheme::kSdZf || scheme == Scheme::kOlSdZf ||
         scheme == Scheme::kOlSdZfDither;
}

double SchemeSpec::resolved_overload_amplitude() const {
  if (overload_amplitude) return *overload_amplitude;
  return std::sqrt(2.0);
}

void SchemeSpec::validate() const {
  if (uses_alphabet()) {
    if (n_levels < 4)
      throw ConfigError("scheme " + id() + " requires n_levels >= 4, got " +
                        std::to_string(n_levels));
  } else if (n_levels != 0) {
    throw ConfigError("scheme " + id() + " does not take an alphabet size");
  }
  const bool overloaded = scheme == Scheme::kOlSdZf || scheme == Scheme::kOlSdZfDither;
  if (overload_amplitude && !overloaded)
    throw ConfigError("scheme " + id() + " does not take an overload amplitude");
  if (overload_amplitude && !(*overload_amplitude > 0.0))
    throw ConfigError("overload_amplitude must be > 0");
}

void ExperimentConfig::validate() const {
  scenario.validate();
  if (schemes.empty()) throw ConfigError("experiment needs at least one scheme");
  for (const auto& s : schemes) s.validate();
  if (snr_grid_db.empty()) throw ConfigError("snr grid must be nonempty");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i)
    if (!(snr_grid_db[i] > snr_grid_db[i - 1]))
      throw ConfigError("snr grid must be strictly increasing");
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  if (block_len < 1) throw ConfigError("block_len must be >= 1");
  Constellation::qam(constellation_order);  // validates the order
  if (n_threads < 0) throw ConfigError("n_threads must be >= 0");
  if (early_stop_errors < 0) throw ConfigError("early_stop_errors must be >= 0");
  if (steer_target_deg && !(std::abs(*steer_target_deg) < 90.0))
    throw ConfigError("steer_target_deg must satisfy |angle| < 90");
  if (!(sigma_q_sq > 0.0)) throw ConfigError("sigma_q_sq must be > 0");
}

namespace {

/// Fixed scheduling quantum: early-stop decisions are made only at chunk
/// boundaries so they do not depend on the number of worker threads.
constexpr int kTrialChunk = 32;

struct PointAccumulator {
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
  double wall_s = 0.0;
};

struct TrialContext {
  const ExperimentConfig& cfg;
  const Constellation& constellation;
  const std::vector<std::optional<PhaseAlphabet>>& alphabets;
  const std::vector<double>& sigma_v;
  double steer_phase;
  const std::vector<std::vector<char>>& done;  // [scheme][snr]
};

PrecodeBlock precode_for(const TrialContext& ctx, const Scene& scene,
                         const SymbolBlock& block, std::size_t scheme_idx,
                         double sigma_v, int trial) {
  const SchemeSpec& spec = ctx.cfg.schemes[scheme_idx];
  switch (spec.scheme) {
    case Scheme::kZf:
      return zf_precode(scene, block);
    case Scheme::kCeZf:
      return ce_zf_precode(scene, block);
    case Scheme::kZfDce:
      return zf_dce_precode(scene, block, *ctx.alphabets[scheme_idx]);
    default: {
      SdZfOptions options;
      options.sigma_q_sq = ctx.cfg.sigma_q_sq;
      options.gain_form = ctx.cfg.gain_form;
      if (spec.scheme == Scheme::kOlSdZf || spec.scheme == Scheme::kOlSdZfDither)
        options.overload_amplitude = spec.resolved_overload_amplitude();
      if (spec.dithered()) {
        options.dither = true;
        options.rng_seed = derive_seed(ctx.cfg.master_seed, StreamPurpose::kDither,
                                       static_cast<std::uint64_t>(trial), scheme_idx);
      }
      return sigma_delta_zf_precode(scene, block, *ctx.alphabets[scheme_idx],
                                    ctx.steer_phase, sigma_v, options);
    }
  }
}

void run_one_trial(const TrialContext& ctx, int trial,
                   std::vector<std::vector<PointAccumulator>>& local) {
  const std::uint64_t scene_seed =
      derive_seed(ctx.cfg.master_seed, StreamPurpose::kScene, static_cast<std::uint64_t>(trial));
  Rng scene_rng(scene_seed);
  const Scene scene = draw_scene(ctx.cfg.scenario, scene_rng);

  Rng symbol_rng(derive_seed(ctx.cfg.master_seed, StreamPurpose::kSymbols,
                             static_cast<std::uint64_t>(trial)));
  const Eigen::MatrixXi truth = draw_symbol_indices(ctx.cfg.scenario.n_users,
                                                    ctx.cfg.block_len, ctx.constellation,
                                                    symbol_rng);
  const SymbolBlock block = symbols_from_indices(truth, ctx.constellation);

  for (std::size_t s = 0; s < ctx.cfg.schemes.size(); ++s) {
    std::optional<PrecodeBlock> cached;
    for (std::size_t v = 0; v < ctx.sigma_v.size(); ++v) {
      if (ctx.done[s][v]) continue;
      const auto start = std::chrono::steady_clock::now();

      const PrecodeBlock* pb = nullptr;
      PrecodeBlock fresh;
      if (ctx.cfg.schemes[s].depends_on_sigma_v()) {
        fresh = precode_for(ctx, scene, block, s, ctx.sigma_v[v], trial);
        pb = &fresh;
      } else {
        if (!cached) cached = precode_for(ctx, scene, block, s, ctx.sigma_v[v], trial);
        pb = &*cached;
      }

      Rng noise_rng(derive_seed(ctx.cfg.master_seed, StreamPurpose::kNoise,
                                static_cast<std::uint64_t>(trial), v));
      const ReceivedBlock received = transmit(scene, pb->reflections, ctx.sigma_v[v], noise_rng);
      const Eigen::MatrixXi decided = detect(received, *pb, scene, ctx.constellation);
      const BitErrorCount count = count_bit_errors(decided, truth, ctx.constellation);

      local[s][v].errors += count.errors;
      local[s][v].bits += count.bits;
      local[s][v].wall_s +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  }
}

}  // namespace

std::vector<BerCurve> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Constellation constellation = Constellation::qam(config.constellation_order);
  const ArrayGeometry geometry = config.scenario.geometry();
  const double steer_phase = steer_phase_for(config.steer_target_or_default(),
                                             config.scenario.arrival_angle_deg, geometry);

  const std::size_t S = config.schemes.size();
  const std::size_t V = config.snr_grid_db.size();

  std::vector<std::optional<PhaseAlphabet>> alphabets(S);
  for (std::size_t s = 0; s < S; ++s)
    if (config.schemes[s].uses_alphabet())
      alphabets[s] = PhaseAlphabet::discrete(config.schemes[s].n_levels);

  std::vector<double> sigma_v(V);
  for (std::size_t v = 0; v < V; ++v)
    sigma_v[v] = std::pow(10.0, -config.snr_grid_db[v] / 20.0);

  std::vector<std::vector<PointAccumulator>> total(S, std::vector<PointAccumulator>(V));
  std::vector<std::vector<char>> done(S, std::vector<char>(V, 0));
  std::vector<std::vector<int>> trials_used(S, std::vector<int>(V, 0));

  unsigned n_threads = config.n_threads > 0
                           ? static_cast<unsigned>(config.n_threads)
                           : std::max(1u, std::thread::hardware_concurrency());

  const TrialContext ctx{config, constellation, alphabets, sigma_v, steer_phase, done};

  for (int chunk_begin = 0; chunk_begin < config.n_trials; chunk_begin += kTrialChunk) {
    const int chunk_end = std::min(config.n_trials, chunk_begin + kTrialChunk);
    bool all_done = true;
    for (std::size_t s = 0; all_done && s < S; ++s)
      for (std::size_t v = 0; all_done && v < V; ++v) all_done = done[s][v] != 0;
    if (all_done) break;

    const unsigned workers =
        std::min<unsigned>(n_threads, static_cast<unsigned>(chunk_end - chunk_begin));
    std::vector<std::vector<std::vector<PointAccumulator>>> locals(
        workers, std::vector<std::vector<PointAccumulator>>(S, std::vector<PointAccumulator>(V)));

    std::atomic<int> next_trial{chunk_begin};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&](unsigned w) {
      for (;;) {
        const int trial = next_trial.fetch_add(1, std::memory_order_relaxed);
        if (trial >= chunk_end) break;
        try {
          run_one_trial(ctx, trial, locals[w]);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) {
            const std::uint64_t seed = derive_seed(config.master_seed, StreamPurpose::kScene,
                                                   static_cast<std::uint64_t>(trial));
            failure = std::make_exception_ptr(std::runtime_error(
                "trial " + std::to_string(trial) + " (scene seed " + std::to_string(seed) +
                ") failed: " + e.what()));
          }
          break;
        }
      }
    };

    if (workers <= 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
      for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t s = 0; s < S; ++s) {
      for (std::size_t v = 0; v < V; ++v) {
        if (done[s][v]) continue;
        for (unsigned w = 0; w < workers; ++w) {
          total[s][v].errors += locals[w][s][v].errors;
          total[s][v].bits += locals[w][s][v].bits;
          total[s][v].wall_s += locals[w][s][v].wall_s;
        }
        trials_used[s][v] += chunk_end - chunk_begin;
        if (config.early_stop_errors > 0 &&
            total[s][v].errors >= static_cast<std::uint64_t>(config.early_stop_errors))
          done[s][v] = 1;
      }
    }
  }

  std::vector<BerCurve> curves(S);
  for (std::size_t s = 0; s < S; ++s) {
    BerCurve& c = curves[s];
    c.scheme = config.schemes[s].id();
    c.n_levels = config.schemes[s].n_levels;
    c.snr_db = config.snr_grid_db;
    c.bit_errors.resize(V);
    c.total_bits.resize(V);
    c.ber.resize(V);
    c.trials.resize(V);
    c.wall_s.resize(V);
    for (std::size_t v = 0; v < V; ++v) {
      c.bit_errors[v] = total[s][v].errors;
      c.total_bits[v] = total[s][v].bits;
      c.ber[v] = total[s][v].bits > 0
                     ? static_cast<double>(total[s][v].errors) / static_cast<double>(total[s][v].bits)
                     : 0.0;
      c.trials[v] = trials_used[s][v];
      c.wall_s[v] = total[s][v].wall_s;
    }
  }
  return curves;
}

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t total, double z) {
  if (total == 0) return {0.0, 1.0};
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double radius = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - radius), std::min(1.0, center + radius)};
}

std::string summarize(const std::vector<BerCurve>& curves) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-14s %4s %8s %12s %23s %12s %8s\n", "scheme", "L",
                "snr_db", "ber", "95% CI", "errors", "trials");
  out << line;
  for (const auto& c : curves) {
    for (std::size_t v = 0; v < c.snr_db.size(); ++v) {
      const WilsonInterval ci = wilson_interval(c.bit_errors[v], c.total_bits[v]);
      std::snprintf(line, sizeof(line),
                    "%-14s %4d %8g %12.4e [%9.3e,%9.3e] %12llu %8d\n", c.scheme.c_str(),
                    c.n_levels, c.snr_db[v], c.ber[v], ci.lo, ci.hi,
                    static_cast<unsigned long long>(c.bit_errors[v]), c.trials[v]);
      out << line;
    }
  }
  return out.str();
}

std::string curves_to_csv(const std::vector<BerCurve>& curves, const ExperimentConfig& config) {
  std::ostringstream out;
  out << "scheme,L,snr_db,bit_errors,total_bits,ber,trials,block_len,n_elements,n_users,seed\n";
  char line[256];
  for (const auto& c : curves) {
    for (std::size_t v = 0; v < c.snr_db.size(); ++v) {
      std::snprintf(line, sizeof(line), "%s,%d,%g,%llu,%llu,%.9e,%d,%d,%d,%d,%llu\n",
                    c.scheme.c_str(), c.n_levels, c.snr_db[v],
                    static_cast<unsigned long long>(c.bit_errors[v]),
                    static_cast<unsigned long long>(c.total_bits[v]), c.ber[v], c.trials[v],
                    config.block_len, config.scenario.n_elements, config.scenario.n_users,
                    static_cast<unsigned long long>(config.master_seed));
      out << line;
    }
  }
  return out.str();
}

}  // namespace sdris
