// SPDX-License-Identifier: Apache-2.0

#include "sdris/link.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sdris/errors.hpp"

namespace sdris {

namespace {

inline std::uint32_t binary_to_gray(std::uint32_t v) { return v ^ (v >> 1); }

inline std::uint32_t gray_to_binary(std::uint32_t g) {
  std::uint32_t v = g;
  for (std::uint32_t shift = 1; shift < 16; shift <<= 1) v ^= v >> shift;
  return v;
}

}  // namespace

Constellation Constellation::qam(int order) {
  if (order < 4 || (order & (order - 1)) != 0)
    throw ConfigError("QAM order must be a power of two >= 4, got " + std::to_string(order));
  const int bits = std::countr_zero(static_cast<unsigned>(order));
  if (bits % 2 != 0)
    throw ConfigError("QAM order must be square (4, 16, 64, ...), got " +
                      std::to_string(order));
  Constellation c;
  c.order_ = order;
  c.bits_per_symbol_ = bits;
  c.side_ = 1 << (bits / 2);
  // Unit average energy: per-axis levels +-1, +-3, ..., E = 2*(side^2-1)/3.
  c.scale_ = 1.0 / std::sqrt(2.0 * (c.side_ * c.side_ - 1) / 3.0);
  c.points_.resize(static_cast<std::size_t>(order));
  c.labels_.resize(static_cast<std::size_t>(order));
  const int half_bits = bits / 2;
  for (int vi = 0; vi < c.side_; ++vi) {
    for (int vq = 0; vq < c.side_; ++vq) {
      const int index = vi * c.side_ + vq;
      const double re = (2 * vi - (c.side_ - 1)) * c.scale_;
      const double im = (2 * vq - (c.side_ - 1)) * c.scale_;
      c.points_[static_cast<std::size_t>(index)] = Complex{re, im};
      c.labels_[static_cast<std::size_t>(index)] =
          (binary_to_gray(static_cast<std::uint32_t>(vi)) << half_bits) |
          binary_to_gray(static_cast<std::uint32_t>(vq));
    }
  }
  return c;
}

int Constellation::decide(Complex y) const {
  const auto slice = [this](double x) {
    const double level = (x / scale_ + (side_ - 1)) * 0.5;
    const long v = std::lround(level);
    return static_cast<int>(std::clamp<long>(v, 0, side_ - 1));
  };
  return slice(y.real()) * side_ + slice(y.imag());
}

int Constellation::index_from_bits(const std::uint8_t* bits) const {
  const int half = bits_per_symbol_ / 2;
  std::uint32_t gi = 0, gq = 0;
  for (int b = 0; b < half; ++b) gi = (gi << 1) | (bits[b] ? 1u : 0u);
  for (int b = 0; b < half; ++b) gq = (gq << 1) | (bits[half + b] ? 1u : 0u);
  return static_cast<int>(gray_to_binary(gi)) * side_ +
         static_cast<int>(gray_to_binary(gq));
}

void Constellation::bits_from_index(int index, std::uint8_t* bits) const {
  const std::uint32_t lab = label(index);
  for (int b = 0; b < bits_per_symbol_; ++b)
    bits[b] = static_cast<std::uint8_t>((lab >> (bits_per_symbol_ - 1 - b)) & 1u);
}

std::vector<Complex> map_bits(const std::vector<std::uint8_t>& bits,
                              const Constellation& constellation) {
  const int bps = constellation.bits_per_symbol();
  if (bits.size() % static_cast<std::size_t>(bps) != 0)
    throw std::invalid_argument("bit count " + std::to_string(bits.size()) +
                                " is not a multiple of " + std::to_string(bps));
  std::vector<Complex> symbols(bits.size() / static_cast<std::size_t>(bps));
  for (std::size_t i = 0; i < symbols.size(); ++i)
    symbols[i] = constellation.point(
        constellation.index_from_bits(bits.data() + i * static_cast<std::size_t>(bps)));
  return symbols;
}

std::vector<std::uint8_t> demap_symbols(const std::vector<Complex>& symbols,
                                        const Constellation& constellation) {
  const int bps = constellation.bits_per_symbol();
  std::vector<std::uint8_t> bits(symbols.size() * static_cast<std::size_t>(bps));
  for (std::size_t i = 0; i < symbols.size(); ++i)
    constellation.bits_from_index(constellation.decide(symbols[i]),
                                  bits.data() + i * static_cast<std::size_t>(bps));
  return bits;
}

ReceivedBlock transmit(const Scene& scene, const Eigen::Ref<const Eigen::MatrixXcd>& reflections,
                       double sigma_v, Rng& rng) {
  if (reflections.rows() != scene.n_elements())
    throw std::invalid_argument("reflections have " + std::to_string(reflections.rows()) +
                                " rows, scene has " + std::to_string(scene.n_elements()) +
                                " elements");
  if (sigma_v < 0.0) throw std::invalid_argument("sigma_v must be >= 0");
  ReceivedBlock out;
  out.noise_std = sigma_v;
  out.samples = scene.channel_matrix() * reflections;
  if (sigma_v > 0.0) {
    std::normal_distribution<double> normal(0.0, sigma_v / std::sqrt(2.0));
    for (Eigen::Index t = 0; t < out.samples.cols(); ++t)
      for (Eigen::Index k = 0; k < out.samples.rows(); ++k)
        out.samples(k, t) += Complex{normal(rng), normal(rng)};
  }
  return out;
}

Eigen::MatrixXi detect(const ReceivedBlock& received, const PrecodeBlock& block_meta,
                       const Scene& scene, const Constellation& constellation) {
  const Eigen::Index K = received.samples.rows();
  const Eigen::Index T = received.samples.cols();
  if (block_meta.per_user_noise_std.size() != K)
    throw DetectionError("block metadata does not match the received dimensions");

  const bool dithered = block_meta.dither_weight != 0.0;
  Eigen::VectorXcd dither_offset;
  if (dithered) {
    if (!block_meta.dither)
      throw DetectionError("dithered scheme but no dither vector in block metadata");
    // Known contribution of the dither through the channel, per user.
    dither_offset = scene.channel_matrix() * block_meta.dither.value();
  }

  Eigen::MatrixXi decisions(K, T);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double normalizer = block_meta.dither_signal_weight * block_meta.scale *
                              block_meta.per_user_noise_std(k);
    for (Eigen::Index t = 0; t < T; ++t) {
      Complex y = received.samples(k, t);
      if (dithered) y -= block_meta.dither_weight * dither_offset(k);
      decisions(k, t) = constellation.decide(y / normalizer);
    }
  }
  return decisions;
}

BitErrorCount count_bit_errors(const Eigen::Ref<const Eigen::MatrixXi>& decided,
                               const Eigen::Ref<const Eigen::MatrixXi>& truth,
                               const Constellation& constellation) {
  if (decided.rows() != truth.rows() || decided.cols() != truth.cols())
    throw std::invalid_argument("decided/truth shape mismatch");
  BitErrorCount count;
  for (Eigen::Index t = 0; t < decided.cols(); ++t)
    for (Eigen::Index k = 0; k < decided.rows(); ++k)
      count.errors += static_cast<std::uint64_t>(
          std::popcount(constellation.label(decided(k, t)) ^
                        constellation.label(truth(k, t))));
  count.bits = static_cast<std::uint64_t>(decided.size()) *
               static_cast<std::uint64_t>(constellation.bits_per_symbol());
  return count;
}

Eigen::MatrixXi draw_symbol_indices(int n_users, int block_len,
                                    const Constellation& constellation, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, constellation.order() - 1);
  Eigen::MatrixXi indices(n_users, block_len);
  for (int t = 0; t < block_len; ++t)
    for (int k = 0; k < n_users; ++k) indices(k, t) = pick(rng);
  return indices;
}

SymbolBlock symbols_from_indices(const Eigen::Ref<const Eigen::MatrixXi>& indices,
                                 const Constellation& constellation) {
  SymbolBlock block;
  block.constellation_order = constellation.order();
  block.symbols.resize(indices.rows(), indices.cols());
  for (Eigen::Index t = 0; t < indices.cols(); ++t)
    for (Eigen::Index k = 0; k < indices.rows(); ++k)
      block.symbols(k, t) = constellation.point(indices(k, t));
  return block;
}

}  // namespace sdris
