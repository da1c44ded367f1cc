// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sdris/common.hpp"
#include "sdris/precoder.hpp"
#include "sdris/rng.hpp"
#include "sdris/scene.hpp"

namespace sdris {

/// Square Gray-coded QAM with unit average energy. Bit labels place the
/// first half of the bits on the in-phase axis, the second half on the
/// quadrature axis, each half binary-reflected Gray coded, so lattice
/// neighbours differ in exactly one bit.
class Constellation {
 public:
  /// order must be a square power of four (4, 16, 64, 256).
  static Constellation qam(int order);

  int order() const { return order_; }
  int bits_per_symbol() const { return bits_per_symbol_; }
  Complex point(int index) const { return points_[static_cast<std::size_t>(index)]; }
  const std::vector<Complex>& points() const { return points_; }
  std::uint32_t label(int index) const { return labels_[static_cast<std::size_t>(index)]; }

  /// Nearest constellation point (per-axis slicing, exact for square QAM).
  int decide(Complex y) const;

  int index_from_bits(const std::uint8_t* bits) const;
  void bits_from_index(int index, std::uint8_t* bits) const;

 private:
  int order_ = 0;
  int side_ = 0;  // PAM levels per axis
  int bits_per_symbol_ = 0;
  double scale_ = 1.0;  // level spacing normalizer
  std::vector<Complex> points_;
  std::vector<std::uint32_t> labels_;
};

/// Gray-labelled bit-to-symbol mapping; bit count must be a multiple of
/// log2(order), else std::invalid_argument.
std::vector<Complex> map_bits(const std::vector<std::uint8_t>& bits,
                              const Constellation& constellation);

/// Nearest-point demapping back to bits; inverse of map_bits on noiseless
/// symbols.
std::vector<std::uint8_t> demap_symbols(const std::vector<Complex>& symbols,
                                        const Constellation& constellation);

struct ReceivedBlock {
  Eigen::MatrixXcd samples;  // K x T
  double noise_std = 0.0;    // sigma_v
};

/// Downlink transmission y_{k,t} = h~_k^T x_t + v_{k,t} with circular complex
/// Gaussian noise of total variance sigma_v^2, independent per user and slot.
ReceivedBlock transmit(const Scene& scene, const Eigen::Ref<const Eigen::MatrixXcd>& reflections,
                       double sigma_v, Rng& rng);

/// Symbol decisions (point indices, K x T). Undithered schemes use
/// dec(y / (C * sigma_w,k)); dithered schemes subtract the known dither
/// contribution first and divide by the signal weight as well. Throws
/// DetectionError if dither metadata is missing for a dithered block.
Eigen::MatrixXi detect(const ReceivedBlock& received, const PrecodeBlock& block_meta,
                       const Scene& scene, const Constellation& constellation);

struct BitErrorCount {
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
};

/// Hamming distance between the Gray labels of two index matrices.
BitErrorCount count_bit_errors(const Eigen::Ref<const Eigen::MatrixXi>& decided,
                               const Eigen::Ref<const Eigen::MatrixXi>& truth,
                               const Constellation& constellation);

/// Uniform i.i.d. symbol indices (K x T); equivalent to drawing i.i.d. bits.
Eigen::MatrixXi draw_symbol_indices(int n_users, int block_len,
                                    const Constellation& constellation, Rng& rng);

SymbolBlock symbols_from_indices(const Eigen::Ref<const Eigen::MatrixXi>& indices,
                                 const Constellation& constellation);

}  // namespace sdris
