// SPDX-License-Identifier: Apache-2.0

#include "sdris/quantizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sdris {

PhaseAlphabet PhaseAlphabet::discrete(int n_levels, double phase_offset) {
  if (n_levels < 4)
    throw std::domain_error("phase alphabet requires n_levels >= 4, got " +
                            std::to_string(n_levels));
  PhaseAlphabet a;
  a.continuous_ = false;
  a.n_levels_ = n_levels;
  const double step = kTwoPi / n_levels;
  double off = std::fmod(phase_offset, step);
  if (off < 0.0) off += step;
  a.phase_offset_ = off;
  a.points_.resize(static_cast<std::size_t>(n_levels));
  for (int m = 0; m < n_levels; ++m)
    a.points_[static_cast<std::size_t>(m)] = std::polar(1.0, off + step * m);
  return a;
}

PhaseAlphabet PhaseAlphabet::continuous() {
  PhaseAlphabet a;
  a.continuous_ = true;
  return a;
}

double PhaseAlphabet::no_overload_amplitude() const {
  if (continuous_) return 1.0;
  return 2.0 * std::cos(kPi / n_levels_) - 1.0;
}

namespace {

inline double score(Complex p, Complex a) {
  return p.real() * a.real() + p.imag() * a.imag();  // Re(conj(p) * a)
}

}  // namespace

QuantizeResult quantize(Complex a, const PhaseAlphabet& alphabet) {
  if (alphabet.is_continuous()) {
    const double r = std::abs(a);
    if (r == 0.0) {
      const Complex p{1.0, 0.0};  // tie-break: smallest phase
      return {p, p};
    }
    const Complex p = a / r;
    return {p, p - a};
  }

  const int L = alphabet.n_levels();
  int best = 0;
  if (L <= 16) {
    // Full scan; first strict maximum wins, which is the smallest-phase rule
    // since points are stored in increasing phase order.
    double best_score = score(alphabet.point(0), a);
    for (int m = 1; m < L; ++m) {
      const double s = score(alphabet.point(m), a);
      if (s > best_score) {
        best_score = s;
        best = m;
      }
    }
  } else {
    // Round the phase to the grid, then settle the result exactly against the
    // two neighbours with the same comparator as the full scan.
    const double step = kTwoPi / L;
    const double rel = (std::arg(a) - alphabet.phase_offset()) / step;
    const long base = std::lround(rel);
    std::array<int, 3> candidates;
    for (int i = 0; i < 3; ++i) {
      long c = (base + i - 1) % L;
      if (c < 0) c += L;
      candidates[static_cast<std::size_t>(i)] = static_cast<int>(c);
    }
    std::sort(candidates.begin(), candidates.end());
    best = candidates[0];
    double best_score = score(alphabet.point(best), a);
    for (int i = 1; i < 3; ++i) {
      const int m = candidates[static_cast<std::size_t>(i)];
      if (m == candidates[static_cast<std::size_t>(i - 1)]) continue;
      const double s = score(alphabet.point(m), a);
      if (s > best_score) {
        best_score = s;
        best = m;
      }
    }
  }
  const Complex p = alphabet.point(best);
  return {p, p - a};
}

}  // namespace sdris
