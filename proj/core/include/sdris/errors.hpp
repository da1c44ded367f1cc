// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace sdris {

/// Invalid or inconsistent configuration (bad scenario, scheme or experiment
/// parameters, malformed config files).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Random scenario generation failed (e.g. the angle rejection sampler
/// exhausted its retry budget).
struct GenerationError : std::runtime_error {
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure while precoding (rank-deficient channel matrix).
struct PrecodingError : std::runtime_error {
  explicit PrecodingError(const std::string& what) : std::runtime_error(what) {}
};

/// Receiver-side failure (e.g. dithered scheme without dither metadata).
struct DetectionError : std::runtime_error {
  explicit DetectionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sdris
