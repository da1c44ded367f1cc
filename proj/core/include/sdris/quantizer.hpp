// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "sdris/common.hpp"

namespace sdris {

/// Output alphabet of the phase quantizer: L points uniformly sampled on the
/// unit circle (phases offset + 2*pi*m/L, m = 0..L-1, so 1+0j is a member at
/// zero offset), or the continuous unit circle.
///
/// The optional global phase offset is folded into [0, 2*pi/L); this keeps
/// the point set unchanged and makes index order equal to phase order, which
/// the tie-break rule below relies on.
class PhaseAlphabet {
 public:
  /// Discrete alphabet. Throws std::domain_error for n_levels < 4: the
  /// no-overload bound is only established for L >= 4 and we do not
  /// extrapolate it.
  static PhaseAlphabet discrete(int n_levels, double phase_offset = 0.0);
  static PhaseAlphabet continuous();

  bool is_continuous() const { return continuous_; }
  int n_levels() const { return n_levels_; }  // 0 when continuous
  double phase_offset() const { return phase_offset_; }
  Complex point(int index) const { return points_[static_cast<std::size_t>(index)]; }
  const std::vector<Complex>& points() const { return points_; }

  /// Largest input amplitude that provably keeps the modulator quantization
  /// error at or below 1: A*_L = sin(2*pi/L)/sin(pi/L) - 1 = 2*cos(pi/L) - 1
  /// for discrete alphabets, 1 for the continuous limit.
  double no_overload_amplitude() const;

 private:
  PhaseAlphabet() = default;

  bool continuous_ = false;
  int n_levels_ = 0;
  double phase_offset_ = 0.0;
  std::vector<Complex> points_;
};

struct QuantizeResult {
  Complex point;  // alphabet member nearest in phase
  Complex error;  // point - input, so that output = input + error
};

/// Projects a complex input to the nearest alphabet point (maximal
/// Re(conj(point) * a)). Any input is legal, including 0. Ties, including
/// a = 0, resolve to the tied point with the smallest phase in [0, 2*pi),
/// so Q_4(0) = 1+0j.
QuantizeResult quantize(Complex a, const PhaseAlphabet& alphabet);

}  // namespace sdris
