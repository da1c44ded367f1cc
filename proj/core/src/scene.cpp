// SPDX-License-Identifier: Apache-2.0

#include "sdris/scene.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "sdris/errors.hpp"

namespace sdris {

void ArrayGeometry::validate() const {
  if (n_elements < 1)
    throw ConfigError("n_elements must be >= 1, got " + std::to_string(n_elements));
  if (!(spacing_over_wavelength > 0.0))
    throw ConfigError("spacing_over_wavelength must be > 0");
}

void ScenarioConfig::validate() const {
  geometry().validate();
  if (n_users < 1) throw ConfigError("n_users must be >= 1");
  if (n_users > n_elements)
    throw ConfigError("n_users (" + std::to_string(n_users) +
                      ") exceeds n_elements (" + std::to_string(n_elements) + ")");
  if (std::abs(arrival_angle_deg) >= 90.0)
    throw ConfigError("arrival_angle_deg must satisfy |angle| < 90");
  if (!(user_sector_lo_deg < user_sector_hi_deg))
    throw ConfigError("user sector must be a nonempty interval");
  if (user_sector_lo_deg <= -90.0 || user_sector_hi_deg >= 90.0)
    throw ConfigError("user sector must lie inside (-90, 90)");
  if (min_separation_deg < 0.0) throw ConfigError("min_separation_deg must be >= 0");
  // Necessary feasibility condition for K points with pairwise separation.
  const double span = user_sector_hi_deg - user_sector_lo_deg;
  if ((n_users - 1) * min_separation_deg > span)
    throw ConfigError("user sector too narrow for n_users at min_separation_deg");
  if (!(gain_r0 > 0.0) || !(gain_r1_lo > 0.0) || !(gain_r1_lo <= gain_r1_hi))
    throw ConfigError("gain model requires r0 > 0 and 0 < r1_lo <= r1_hi");
  if (max_scene_attempts < 1) throw ConfigError("max_scene_attempts must be >= 1");
}

static void check_angle_range(double angle_deg, const char* what) {
  if (!(std::abs(angle_deg) < 90.0))
    throw std::domain_error(std::string(what) + " must satisfy |angle| < 90 deg, got " +
                            std::to_string(angle_deg));
}

Eigen::VectorXcd steering_vector(double angle_deg, const ArrayGeometry& geometry) {
  geometry.validate();
  check_angle_range(angle_deg, "steering angle");
  const double freq = kTwoPi * geometry.spacing_over_wavelength * std::sin(deg2rad(angle_deg));
  Eigen::VectorXcd v(geometry.n_elements);
  for (int n = 0; n < geometry.n_elements; ++n) v(n) = std::polar(1.0, -freq * n);
  return v;
}

double spatial_frequency(double user_angle_deg, double arrival_angle_deg,
                         const ArrayGeometry& geometry) {
  return kTwoPi * geometry.spacing_over_wavelength *
         (std::sin(deg2rad(arrival_angle_deg)) + std::sin(deg2rad(user_angle_deg)));
}

Scene::Scene(ArrayGeometry geometry, double arrival_angle_deg, Complex arrival_gain,
             std::vector<UserChannel> users)
    : geometry_(geometry),
      arrival_angle_deg_(arrival_angle_deg),
      arrival_gain_(arrival_gain),
      users_(std::move(users)) {
  geometry_.validate();
  check_angle_range(arrival_angle_deg_, "arrival angle");
  const int K = static_cast<int>(users_.size());
  const int N = geometry_.n_elements;
  if (K < 1) throw ConfigError("scene requires at least one user");
  if (K > N)
    throw ConfigError("scene has more users (" + std::to_string(K) +
                      ") than elements (" + std::to_string(N) + ")");
  if (std::abs(arrival_gain_) <= 0.0) throw ConfigError("arrival gain must be nonzero");

  cascaded_gains_.resize(K);
  steering_.resize(K, N);
  for (int k = 0; k < K; ++k) {
    check_angle_range(users_[k].angle_deg, "user angle");
    if (std::abs(users_[k].gain) <= 0.0) throw ConfigError("user gain must be nonzero");
    cascaded_gains_(k) = arrival_gain_ * users_[k].gain;
    const double omega = spatial_frequency(k);
    for (int n = 0; n < N; ++n) steering_(k, n) = std::polar(1.0, -omega * n);
  }
  channel_ = cascaded_gains_.asDiagonal() * steering_;
}

double Scene::spatial_frequency(int user) const {
  return sdris::spatial_frequency(users_.at(static_cast<std::size_t>(user)).angle_deg,
                                  arrival_angle_deg_, geometry_);
}

Scene cascaded_channel(double arrival_angle_deg, Complex arrival_gain,
                       std::vector<UserChannel> users, const ArrayGeometry& geometry) {
  return Scene(geometry, arrival_angle_deg, arrival_gain, std::move(users));
}

namespace {

Complex draw_gain(const ScenarioConfig& cfg, Rng& rng) {
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::uniform_real_distribution<double> r1(cfg.gain_r1_lo, cfg.gain_r1_hi);
  const double psi = phase(rng);
  const double amplitude = cfg.gain_r0 / r1(rng);
  return std::polar(amplitude, psi);
}

std::vector<double> draw_separated_angles(const ScenarioConfig& cfg, Rng& rng) {
  std::uniform_real_distribution<double> angle(cfg.user_sector_lo_deg, cfg.user_sector_hi_deg);
  std::vector<double> angles(static_cast<std::size_t>(cfg.n_users));
  for (int attempt = 0; attempt < cfg.max_scene_attempts; ++attempt) {
    for (auto& a : angles) a = angle(rng);
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < angles.size(); ++i)
      for (std::size_t j = i + 1; ok && j < angles.size(); ++j)
        ok = std::abs(angles[i] - angles[j]) >= cfg.min_separation_deg;
    if (ok) return angles;
  }
  throw GenerationError("angle rejection sampling failed after " +
                        std::to_string(cfg.max_scene_attempts) + " attempts");
}

}  // namespace

Scene draw_scene(const ScenarioConfig& config, Rng& rng) {
  config.validate();
  // Draw order is part of the reproducibility contract: arrival gain, then
  // user angles, then per-user gains.
  const Complex beta = draw_gain(config, rng);
  const std::vector<double> angles = draw_separated_angles(config, rng);
  std::vector<UserChannel> users(static_cast<std::size_t>(config.n_users));
  for (int k = 0; k < config.n_users; ++k) {
    users[static_cast<std::size_t>(k)] =
        UserChannel{angles[static_cast<std::size_t>(k)], draw_gain(config, rng)};
  }
  return Scene(config.geometry(), config.arrival_angle_deg, beta, std::move(users));
}

}  // namespace sdris
