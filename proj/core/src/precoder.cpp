// SPDX-License-Identifier: Apache-2.0

#include "sdris/precoder.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "sdris/errors.hpp"
#include "sdris/rng.hpp"
#include "sdris/sigma_delta.hpp"

namespace sdris {

std::string_view scheme_id(Scheme scheme) {
  switch (scheme) {
    case Scheme::kZf: return "zf";
    case Scheme::kCeZf: return "ce-zf";
    case Scheme::kZfDce: return "zf-dce";
    case Scheme::kSdZf: return "sd-zf";
    case Scheme::kOlSdZf: return "ol-sd-zf";
    case Scheme::kOlSdZfDither: return "ol-sd-zf-dith";
  }
  return "?";
}

Scheme scheme_from_id(std::string_view id) {
  if (id == "zf") return Scheme::kZf;
  if (id == "ce-zf") return Scheme::kCeZf;
  if (id == "zf-dce") return Scheme::kZfDce;
  if (id == "sd-zf") return Scheme::kSdZf;
  if (id == "ol-sd-zf") return Scheme::kOlSdZf;
  if (id == "ol-sd-zf-dith") return Scheme::kOlSdZfDither;
  throw ConfigError("unknown scheme id: " + std::string(id));
}

double effective_noise_std(const Scene& scene, int user, double steer_phase,
                           double sigma_v, double sigma_q_sq, GainForm gain_form) {
  if (user < 0 || user >= scene.n_users())
    throw std::out_of_range("effective_noise_std: bad user index");
  if (sigma_v < 0.0) throw std::invalid_argument("sigma_v must be >= 0");
  const double gain_mag = std::abs(scene.cascaded_gains()(user));
  const double g = gain_form == GainForm::kMagnitudeSquared ? gain_mag * gain_mag : gain_mag;
  const double half = 0.5 * (steer_phase - scene.spatial_frequency(user));
  const double s = std::sin(half);
  return std::sqrt(2.0 * g * sigma_q_sq * s * s + sigma_v * sigma_v);
}

namespace {

constexpr double kRankTolerance = 1e-10;

/// pinv(M) * rhs for a wide K x N matrix via SVD with a rank check.
Eigen::MatrixXcd solve_pseudo_inverse(const Eigen::MatrixXcd& mat,
                                      const Eigen::MatrixXcd& rhs) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < kRankTolerance * sv(0))
    throw PrecodingError("channel matrix is rank deficient (sigma_min/sigma_max = " +
                         std::to_string(sv(sv.size() - 1) / sv(0)) + ")");
  return svd.matrixV() *
         (sv.cwiseInverse().asDiagonal() * (svd.matrixU().adjoint() * rhs));
}

PrecodeBlock zf_block(const Scene& scene, const SymbolBlock& block) {
  const Eigen::MatrixXcd x = solve_pseudo_inverse(scene.channel_matrix(), block.symbols);
  const double peak = x.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) throw PrecodingError("all-zero ZF output");
  PrecodeBlock out;
  out.reflections = x / peak;
  out.scale = 1.0 / peak;  // the block-wide effective gain: y = (1/peak) s + v
  out.per_user_comp = Eigen::VectorXcd::Ones(scene.n_users());
  out.per_user_noise_std = Eigen::VectorXd::Ones(scene.n_users());
  out.scheme = Scheme::kZf;
  return out;
}

/// Per-user effective gains of a quantized block, as the pilot stage would
/// estimate them: least-squares fit of (H~ x_t) against s_t over the block,
/// real part (the systematic gain of a phase projection is real positive).
Eigen::VectorXd pilot_gains(const Scene& scene, const Eigen::MatrixXcd& reflections,
                            const SymbolBlock& block) {
  const Eigen::MatrixXcd received = scene.channel_matrix() * reflections;  // K x T
  const int K = static_cast<int>(received.rows());
  Eigen::VectorXd gains(K);
  for (int k = 0; k < K; ++k) {
    const Complex num = received.row(k).cwiseProduct(block.symbols.row(k).conjugate()).sum();
    const double den = block.symbols.row(k).squaredNorm();
    gains(k) = den > 0.0 ? std::max(num.real() / den, 1e-300) : 1.0;
  }
  return gains;
}

}  // namespace

PrecodeBlock zf_precode(const Scene& scene, const SymbolBlock& block) {
  return zf_block(scene, block);
}

PrecodeBlock ce_zf_precode(const Scene& scene, const SymbolBlock& block) {
  PrecodeBlock out = zf_block(scene, block);
  const PhaseAlphabet inf = PhaseAlphabet::continuous();
  for (Eigen::Index j = 0; j < out.reflections.cols(); ++j)
    for (Eigen::Index i = 0; i < out.reflections.rows(); ++i)
      out.reflections(i, j) = quantize(out.reflections(i, j), inf).point;
  out.scheme = Scheme::kCeZf;
  out.scale = 1.0;
  out.per_user_noise_std = pilot_gains(scene, out.reflections, block);
  return out;
}

PrecodeBlock zf_dce_precode(const Scene& scene, const SymbolBlock& block,
                            const PhaseAlphabet& alphabet) {
  PrecodeBlock out = zf_block(scene, block);
  for (Eigen::Index j = 0; j < out.reflections.cols(); ++j)
    for (Eigen::Index i = 0; i < out.reflections.rows(); ++i)
      out.reflections(i, j) = quantize(out.reflections(i, j), alphabet).point;
  out.scheme = Scheme::kZfDce;
  out.scale = 1.0;
  out.per_user_noise_std = pilot_gains(scene, out.reflections, block);
  return out;
}

Eigen::VectorXcd draw_dither(int n, double amplitude_cap, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> mag(0.0, amplitude_cap);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  Eigen::VectorXcd u(n);
  for (int i = 0; i < n; ++i) {
    const double r = mag(rng);
    u(i) = std::polar(r, phase(rng));
  }
  return u;
}

PrecodeBlock sigma_delta_zf_precode(const Scene& scene, const SymbolBlock& block,
                                    const PhaseAlphabet& alphabet, double steer_phase,
                                    double sigma_v, const SdZfOptions& options) {
  if (options.dither && !options.rng_seed)
    throw ConfigError("dithered sigma-delta precoding requires an rng_seed");

  const int K = scene.n_users();
  const int N = scene.n_elements();
  const Eigen::Index T = block.symbols.cols();
  if (block.symbols.rows() != K)
    throw ConfigError("symbol block has " + std::to_string(block.symbols.rows()) +
                      " rows for " + std::to_string(K) + " users");

  PrecodeBlock out;
  out.scheme = options.dither ? Scheme::kOlSdZfDither
               : options.overload_amplitude ? Scheme::kOlSdZf
                                            : Scheme::kSdZf;

  // Gain compensation D = diag(d_k), d_k = sigma_w,k conj(a~_k)/|a~_k|^2.
  out.per_user_noise_std.resize(K);
  out.per_user_comp.resize(K);
  for (int k = 0; k < K; ++k) {
    const double sw = effective_noise_std(scene, k, steer_phase, sigma_v,
                                          options.sigma_q_sq, options.gain_form);
    const Complex gain = scene.cascaded_gains()(k);
    out.per_user_noise_std(k) = sw;
    out.per_user_comp(k) = sw * std::conj(gain) / std::norm(gain);
  }

  const Eigen::MatrixXcd weighted = out.per_user_comp.asDiagonal() * block.symbols;
  const Eigen::MatrixXcd base = solve_pseudo_inverse(scene.steering_matrix(), weighted);
  const double peak = base.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) throw PrecodingError("all-zero sigma-delta ZF input");

  const double cap = alphabet.no_overload_amplitude();
  const double amplitude = options.overload_amplitude.value_or(cap);
  if (!(amplitude > 0.0)) throw ConfigError("overload_amplitude must be > 0");
  out.scale = amplitude / peak;

  Eigen::MatrixXcd inputs = out.scale * base;
  if (options.dither) {
    out.dither_signal_weight = options.dither_signal_weight;
    out.dither_weight = options.dither_weight;
    out.dither_seed = options.rng_seed;
    out.dither = draw_dither(N, cap, *options.rng_seed);
    inputs *= options.dither_signal_weight;
    const Eigen::VectorXcd scaled_dither = options.dither_weight * out.dither.value();
    inputs.colwise() += scaled_dither;
  }

  const ModulatorConfig mod = ModulatorConfig::with_alphabet(alphabet, steer_phase);
  out.reflections.resize(N, T);
  Eigen::MatrixXcd errors;
  if (options.keep_error_sequences) errors.resize(N, T);
  Eigen::VectorXcd err_col(N);
  for (Eigen::Index t = 0; t < T; ++t) {
    modulate_into(inputs.col(t), mod, out.reflections.col(t), err_col);
    if (options.keep_error_sequences) errors.col(t) = err_col;
  }
  if (options.keep_error_sequences) out.error_sequences = std::move(errors);
  return out;
}

}  // namespace sdris
