// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "sdris/harness.hpp"

namespace sdris {

/// Built-in experiment presets:
///   "fig4"  full-scale scheme comparison across alphabet sizes L = 4/8/16
///   "fig5"  full-scale L = 4 study with overloading and subtractive dithers
///   "desk"  scaled-down fig4 variant that runs in minutes on a laptop
/// Throws std::invalid_argument for unknown names.
ExperimentConfig preset(std::string_view name);

}  // namespace sdris
