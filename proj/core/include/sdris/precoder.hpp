// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "sdris/common.hpp"
#include "sdris/quantizer.hpp"
#include "sdris/scene.hpp"

namespace sdris {

/// Precoding schemes compared in the experiments. The string forms are the
/// stable identifiers used by the CLI and the results CSV.
enum class Scheme {
  kZf,           // "zf"          unquantized zero-forcing
  kCeZf,         // "ce-zf"       constant-envelope (continuous-phase) ZF
  kZfDce,        // "zf-dce"      direct L-phase quantization of ZF
  kSdZf,         // "sd-zf"       sigma-delta ZF
  kOlSdZf,       // "ol-sd-zf"    overloaded sigma-delta ZF
  kOlSdZfDither, // "ol-sd-zf-dith" overloaded + subtractive dithers
};

std::string_view scheme_id(Scheme scheme);
Scheme scheme_from_id(std::string_view id);  // throws ConfigError on unknown id

/// Which per-user gain power enters the closed-form effective noise:
/// the derivation gives |alpha~_k|^2; kGainMagnitude reproduces the weaker
/// |alpha~_k| variant for comparison.
enum class GainForm { kMagnitudeSquared, kMagnitude };

struct SymbolBlock {
  Eigen::MatrixXcd symbols;  // K x T, one column per time slot
  int constellation_order = 16;
};

/// Per-block precoder output plus the receiver-side metadata (scaling,
/// per-user normalizers, dither) that the detector needs.
struct PrecodeBlock {
  Eigen::MatrixXcd reflections;        // N x T
  double scale = 1.0;                  // C > 0
  Eigen::VectorXcd per_user_comp;      // d_k (diagonal of D)
  Eigen::VectorXd per_user_noise_std;  // sigma_w,k; for the quantized-ZF
                                       // baselines this slot instead holds the
                                       // pilot-estimated effective gain so the
                                       // same decision rule applies
  std::optional<Eigen::VectorXcd> dither;       // u, when dithered
  std::optional<std::uint64_t> dither_seed;     // seed that regenerates u
  double dither_signal_weight = 1.0;            // 0.8 when dithered
  double dither_weight = 0.0;                   // 0.2 when dithered
  Scheme scheme = Scheme::kZf;
  /// Per-slot quantization error sequences (N x T), kept only on request.
  std::optional<Eigen::MatrixXcd> error_sequences;
};

struct SdZfOptions {
  /// Input amplitude fed to the scaling constant; defaults to the alphabet's
  /// no-overload bound A*_L. Values above A*_L overload the modulator.
  std::optional<double> overload_amplitude;
  bool dither = false;
  double dither_signal_weight = 0.8;
  double dither_weight = 0.2;
  /// Seed for the dither generator; required when dither is set. The
  /// receiver regenerates u from the same seed.
  std::optional<std::uint64_t> rng_seed;
  double sigma_q_sq = 1.0 / 3.0;
  GainForm gain_form = GainForm::kMagnitudeSquared;
  bool keep_error_sequences = false;
};

/// Closed-form effective noise standard deviation for user k:
/// sigma_w,k^2 = 2 * g_k * sigma_q^2 * |sin((phi - omega_k)/2)|^2 + sigma_v^2
/// with g_k = |alpha~_k|^2 (or |alpha~_k| under GainForm::kMagnitude).
double effective_noise_std(const Scene& scene, int user, double steer_phase,
                           double sigma_v, double sigma_q_sq = 1.0 / 3.0,
                           GainForm gain_form = GainForm::kMagnitudeSquared);

/// Unquantized zero-forcing: x_t = pinv(H~) s_t normalized so the largest
/// entry modulus over the whole block is 1. Throws PrecodingError when the
/// channel matrix is numerically rank deficient.
PrecodeBlock zf_precode(const Scene& scene, const SymbolBlock& block);

/// Continuous-phase projection of the ZF block (reflect only the angle).
PrecodeBlock ce_zf_precode(const Scene& scene, const SymbolBlock& block);

/// Direct L-phase quantization of the ZF block.
PrecodeBlock zf_dce_precode(const Scene& scene, const SymbolBlock& block,
                            const PhaseAlphabet& alphabet);

/// Sigma-delta ZF: x̄_t = C * pinv(A~) * D * s_t with D = diag(d_k),
/// d_k = sigma_w,k * conj(alpha~_k)/|alpha~_k|^2 and C = A / max_{n,t} |.|,
/// optionally overloaded and/or mixed with a subtractive dither, then passed
/// through the angle-steered modulator slot by slot.
PrecodeBlock sigma_delta_zf_precode(const Scene& scene, const SymbolBlock& block,
                                    const PhaseAlphabet& alphabet, double steer_phase,
                                    double sigma_v, const SdZfOptions& options = {});

/// Dither vector with |u_n| <= amplitude_cap: magnitudes uniform in
/// [0, cap], phases uniform in [-pi, pi), reproducible from the seed alone.
Eigen::VectorXcd draw_dither(int n, double amplitude_cap, std::uint64_t seed);

}  // namespace sdris
