// SPDX-License-Identifier: Apache-2.0
//
// sdris: spatial sigma-delta precoding simulator for RIS-driven downlinks.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace sdris {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / kPi); }

/// Wraps an angle in radians to the half-open interval [-pi, pi).
inline double wrap_to_pi(double rad) {
  double w = std::fmod(rad + kPi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w - kPi;
}

}  // namespace sdris
