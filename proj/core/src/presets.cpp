// SPDX-License-Identifier: Apache-2.0

#include "sdris/presets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sdris {

namespace {

std::vector<double> grid(double lo, double step, double hi) {
  std::vector<double> g;
  for (int i = 0;; ++i) {
    const double v = lo + step * i;
    if (v > hi + 1e-9) break;
    g.push_back(v);
  }
  return g;
}

ScenarioConfig full_scale_scenario() {
  ScenarioConfig s;
  s.n_elements = 512;
  s.spacing_over_wavelength = 1.0 / 8.0;
  s.arrival_angle_deg = -60.0;
  s.n_users = 8;
  s.user_sector_lo_deg = 20.0;
  s.user_sector_hi_deg = 60.0;
  s.min_separation_deg = 1.0;
  s.gain_r0 = 30.0;
  s.gain_r1_lo = 20.0;
  s.gain_r1_hi = 100.0;
  return s;
}

SchemeSpec make(Scheme scheme, int n_levels = 0) {
  SchemeSpec s;
  s.scheme = scheme;
  s.n_levels = n_levels;
  return s;
}

}  // namespace

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig cfg;
  cfg.scenario = full_scale_scenario();
  cfg.n_trials = 1000;
  cfg.block_len = 500;
  cfg.constellation_order = 16;
  cfg.master_seed = 1;

  if (name == "fig4") {
    cfg.schemes = {make(Scheme::kZf), make(Scheme::kCeZf), make(Scheme::kSdZf, 4),
                   make(Scheme::kSdZf, 8), make(Scheme::kSdZf, 16)};
    cfg.snr_grid_db = grid(0.0, 3.0, 30.0);
    return cfg;
  }
  if (name == "fig5") {
    cfg.schemes = {make(Scheme::kZf), make(Scheme::kZfDce, 4), make(Scheme::kSdZf, 4),
                   make(Scheme::kOlSdZf, 4), make(Scheme::kOlSdZfDither, 4)};
    cfg.snr_grid_db = grid(0.0, 3.0, 30.0);
    return cfg;
  }
  if (name == "desk") {
    cfg.scenario.n_elements = 128;
    cfg.scenario.n_users = 4;
    cfg.n_trials = 200;
    cfg.block_len = 100;
    cfg.schemes = {make(Scheme::kZf), make(Scheme::kCeZf), make(Scheme::kSdZf, 4),
                   make(Scheme::kSdZf, 8), make(Scheme::kSdZf, 16)};
    cfg.snr_grid_db = grid(0.0, 3.0, 30.0);
    return cfg;
  }
  throw std::invalid_argument("unknown preset \"" + std::string(name) +
                              "\" (expected fig4, fig5 or desk)");
}

}  // namespace sdris
