// SPDX-License-Identifier: Apache-2.0

#include "sdris/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sdris/errors.hpp"

namespace sdris {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.contains(it.key()))
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
    }
  }
}

ScenarioConfig scenario_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("\"scenario\" must be an object");
  reject_unknown_keys(j,
                      {"n_elements", "spacing_over_wavelength", "arrival_angle_deg", "n_users",
                       "user_sector_deg", "min_separation_deg", "gain_r0", "gain_r1_range",
                       "max_scene_attempts"},
                      "scenario");
  ScenarioConfig s;
  read_if(j, "n_elements", s.n_elements);
  read_if(j, "spacing_over_wavelength", s.spacing_over_wavelength);
  read_if(j, "arrival_angle_deg", s.arrival_angle_deg);
  read_if(j, "n_users", s.n_users);
  if (auto it = j.find("user_sector_deg"); it != j.end()) {
    if (!it->is_array() || it->size() != 2)
      throw ConfigError("user_sector_deg must be [lo, hi]");
    s.user_sector_lo_deg = (*it)[0].get<double>();
    s.user_sector_hi_deg = (*it)[1].get<double>();
  }
  read_if(j, "min_separation_deg", s.min_separation_deg);
  read_if(j, "gain_r0", s.gain_r0);
  if (auto it = j.find("gain_r1_range"); it != j.end()) {
    if (!it->is_array() || it->size() != 2)
      throw ConfigError("gain_r1_range must be [lo, hi]");
    s.gain_r1_lo = (*it)[0].get<double>();
    s.gain_r1_hi = (*it)[1].get<double>();
  }
  read_if(j, "max_scene_attempts", s.max_scene_attempts);
  return s;
}

json scenario_to_json(const ScenarioConfig& s) {
  return json{{"n_elements", s.n_elements},
              {"spacing_over_wavelength", s.spacing_over_wavelength},
              {"arrival_angle_deg", s.arrival_angle_deg},
              {"n_users", s.n_users},
              {"user_sector_deg", {s.user_sector_lo_deg, s.user_sector_hi_deg}},
              {"min_separation_deg", s.min_separation_deg},
              {"gain_r0", s.gain_r0},
              {"gain_r1_range", {s.gain_r1_lo, s.gain_r1_hi}},
              {"max_scene_attempts", s.max_scene_attempts}};
}

SchemeSpec scheme_from_json(const json& j) {
  if (j.is_string()) {
    SchemeSpec spec;
    spec.scheme = scheme_from_id(j.get<std::string>());
    return spec;
  }
  if (!j.is_object()) throw ConfigError("scheme entries must be objects or id strings");
  reject_unknown_keys(j, {"name", "n_levels", "overload_amplitude", "dither"}, "scheme");
  if (!j.contains("name")) throw ConfigError("scheme entry is missing \"name\"");
  SchemeSpec spec;
  spec.scheme = scheme_from_id(j.at("name").get<std::string>());
  read_if(j, "n_levels", spec.n_levels);
  if (auto it = j.find("overload_amplitude"); it != j.end())
    spec.overload_amplitude = it->get<double>();
  if (auto it = j.find("dither"); it != j.end()) {
    if (it->get<bool>() != spec.dithered())
      throw ConfigError("\"dither\" contradicts scheme " + spec.id() +
                        " (dithering is implied by the scheme id)");
  }
  return spec;
}

json scheme_to_json(const SchemeSpec& s) {
  json j{{"name", s.id()}};
  if (s.n_levels != 0) j["n_levels"] = s.n_levels;
  if (s.overload_amplitude) j["overload_amplitude"] = *s.overload_amplitude;
  if (s.dithered()) j["dither"] = true;
  return j;
}

GainForm gain_form_from_string(const std::string& s) {
  if (s == "magnitude-squared") return GainForm::kMagnitudeSquared;
  if (s == "magnitude") return GainForm::kMagnitude;
  throw ConfigError("gain_form must be \"magnitude-squared\" or \"magnitude\", got \"" + s +
                    "\"");
}

std::string gain_form_to_string(GainForm g) {
  return g == GainForm::kMagnitudeSquared ? "magnitude-squared" : "magnitude";
}

}  // namespace

ExperimentConfig experiment_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  reject_unknown_keys(j,
                      {"scenario", "schemes", "snr_grid_db", "n_trials", "block_len",
                       "constellation_order", "master_seed", "n_threads", "early_stop_errors",
                       "steer_target_deg", "sigma_q_sq", "gain_form"},
                      "config");
  ExperimentConfig cfg;
  if (j.contains("scenario")) cfg.scenario = scenario_from_json(j.at("scenario"));
  if (j.contains("schemes")) {
    if (!j.at("schemes").is_array()) throw ConfigError("\"schemes\" must be an array");
    cfg.schemes.clear();
    for (const auto& e : j.at("schemes")) cfg.schemes.push_back(scheme_from_json(e));
  }
  if (j.contains("snr_grid_db")) {
    try {
      cfg.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ConfigError("snr_grid_db must be an array of numbers");
    }
  }
  read_if(j, "n_trials", cfg.n_trials);
  read_if(j, "block_len", cfg.block_len);
  read_if(j, "constellation_order", cfg.constellation_order);
  read_if(j, "master_seed", cfg.master_seed);
  read_if(j, "n_threads", cfg.n_threads);
  read_if(j, "early_stop_errors", cfg.early_stop_errors);
  if (auto it = j.find("steer_target_deg"); it != j.end() && !it->is_null())
    cfg.steer_target_deg = it->get<double>();
  read_if(j, "sigma_q_sq", cfg.sigma_q_sq);
  if (auto it = j.find("gain_form"); it != j.end())
    cfg.gain_form = gain_form_from_string(it->get<std::string>());
  return cfg;
}

std::string experiment_to_json_text(const ExperimentConfig& config, int indent) {
  json schemes = json::array();
  for (const auto& s : config.schemes) schemes.push_back(scheme_to_json(s));
  const json j{{"scenario", scenario_to_json(config.scenario)},
               {"schemes", schemes},
               {"snr_grid_db", config.snr_grid_db},
               {"n_trials", config.n_trials},
               {"block_len", config.block_len},
               {"constellation_order", config.constellation_order},
               {"master_seed", config.master_seed},
               {"n_threads", config.n_threads},
               {"early_stop_errors", config.early_stop_errors},
               {"steer_target_deg", config.steer_target_or_default()},
               {"sigma_q_sq", config.sigma_q_sq},
               {"gain_form", gain_form_to_string(config.gain_form)}};
  return j.dump(indent) + "\n";
}

ExperimentConfig load_experiment_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return experiment_from_json_text(buffer.str());
}

std::string apply_overrides(const std::string& json_text,
                            const std::vector<std::string>& overrides) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("override must look like key=value, got \"" + kv + "\"");
    const std::string path = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);

    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::exception&) {
      parsed = value;  // plain string
    }

    json* node = &j;
    std::istringstream segments(path);
    std::string segment;
    std::vector<std::string> parts;
    while (std::getline(segments, segment, '.')) parts.push_back(segment);
    if (parts.empty()) throw ConfigError("empty override key");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      const std::string& p = parts[i];
      if (node->is_array()) {
        std::size_t idx = 0;
        try {
          idx = std::stoul(p);
        } catch (...) {
          throw ConfigError("array index expected in override path \"" + path + "\"");
        }
        if (idx >= node->size())
          throw ConfigError("array index out of range in override path \"" + path + "\"");
        node = &(*node)[idx];
      } else if (node->is_object()) {
        if (!node->contains(p)) (*node)[p] = json::object();
        node = &(*node)[p];
      } else {
        throw ConfigError("cannot descend into scalar at \"" + p + "\" in override path \"" +
                          path + "\"");
      }
    }
    const std::string& leaf = parts.back();
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(leaf);
      } catch (...) {
        throw ConfigError("array index expected in override path \"" + path + "\"");
      }
      if (idx >= node->size())
        throw ConfigError("array index out of range in override path \"" + path + "\"");
      (*node)[idx] = parsed;
    } else if (node->is_object()) {
      (*node)[leaf] = parsed;
    } else {
      throw ConfigError("cannot set \"" + leaf + "\" on a scalar in override path \"" + path +
                        "\"");
    }
  }
  return j.dump(2);
}

std::vector<double> parse_snr_range(const std::string& spec) {
  double lo = 0.0, step = 0.0, hi = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
    throw ConfigError("SNR range must look like lo:step:hi, got \"" + spec + "\"");
  if (!(step > 0.0)) throw ConfigError("SNR range step must be > 0");
  if (hi < lo) throw ConfigError("SNR range must have hi >= lo");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double v = lo + step * i;
    if (v > hi + 1e-9) break;
    grid.push_back(v);
  }
  return grid;
}

}  // namespace sdris
