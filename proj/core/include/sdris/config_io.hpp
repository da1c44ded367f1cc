// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sdris/harness.hpp"

namespace sdris {

/// Parses an experiment config from JSON text (schema documented in the
/// README). Unknown keys are rejected. Throws ConfigError on malformed input.
ExperimentConfig experiment_from_json_text(const std::string& text);

/// Serializes a fully resolved config (defaults materialized) back to JSON.
std::string experiment_to_json_text(const ExperimentConfig& config, int indent = 2);

ExperimentConfig load_experiment_file(const std::filesystem::path& path);

/// Applies `key=value` overrides to JSON text. Keys are dotted paths into
/// the document ("n_trials", "scenario.n_users", "schemes.2.n_levels");
/// values are parsed as JSON scalars/arrays, falling back to strings.
std::string apply_overrides(const std::string& json_text,
                            const std::vector<std::string>& overrides);

/// Expands "lo:step:hi" (inclusive) into a grid. Throws ConfigError on
/// malformed specs or a nonpositive step.
std::vector<double> parse_snr_range(const std::string& spec);

}  // namespace sdris
