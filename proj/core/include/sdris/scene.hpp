// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sdris/common.hpp"
#include "sdris/rng.hpp"

namespace sdris {

/// Uniform linear array of reflective elements.
struct ArrayGeometry {
  int n_elements = 1;                    // N
  double spacing_over_wavelength = 0.5;  // d / lambda

  void validate() const;
};

/// One downlink user: departure angle and complex path gain.
struct UserChannel {
  double angle_deg = 0.0;  // theta_k, in (-90, 90)
  Complex gain{1.0, 0.0};  // alpha_k
};

/// Random scenario distribution: fixed arrival angle, users drawn from an
/// angular sector with a minimum pairwise separation, gains with uniform
/// phase and amplitude r0 / r1 with r1 uniform in [r1_lo, r1_hi].
struct ScenarioConfig {
  int n_elements = 512;
  double spacing_over_wavelength = 0.125;
  double arrival_angle_deg = -60.0;
  int n_users = 8;
  double user_sector_lo_deg = 20.0;
  double user_sector_hi_deg = 60.0;
  double min_separation_deg = 1.0;
  double gain_r0 = 30.0;
  double gain_r1_lo = 20.0;
  double gain_r1_hi = 100.0;
  int max_scene_attempts = 10000;

  ArrayGeometry geometry() const { return {n_elements, spacing_over_wavelength}; }
  double sector_midpoint_deg() const {
    return 0.5 * (user_sector_lo_deg + user_sector_hi_deg);
  }
  void validate() const;
};

/// Immutable end-to-end channel state for one coherence block: cascaded
/// per-user gains and the K x N matrix of unit-modulus steering rows.
/// Safe to share across threads once constructed.
class Scene {
 public:
  Scene(ArrayGeometry geometry, double arrival_angle_deg, Complex arrival_gain,
        std::vector<UserChannel> users);

  const ArrayGeometry& geometry() const { return geometry_; }
  int n_elements() const { return geometry_.n_elements; }
  int n_users() const { return static_cast<int>(users_.size()); }
  double arrival_angle_deg() const { return arrival_angle_deg_; }
  Complex arrival_gain() const { return arrival_gain_; }
  const std::vector<UserChannel>& users() const { return users_; }

  /// Cascaded gains alpha~_k = beta * alpha_k.
  const Eigen::VectorXcd& cascaded_gains() const { return cascaded_gains_; }

  /// K x N matrix whose row k is the unit-modulus cascaded steering vector
  /// a~_k with entries exp(-j * omega_k * n), n = 0..N-1.
  const Eigen::MatrixXcd& steering_matrix() const { return steering_; }

  /// K x N channel matrix H~ = diag(cascaded_gains) * steering_matrix.
  const Eigen::MatrixXcd& channel_matrix() const { return channel_; }

  /// Cascaded spatial frequency omega_k of user k, in radians per element.
  double spatial_frequency(int user) const;

 private:
  ArrayGeometry geometry_;
  double arrival_angle_deg_;
  Complex arrival_gain_;
  std::vector<UserChannel> users_;
  Eigen::VectorXcd cascaded_gains_;
  Eigen::MatrixXcd steering_;
  Eigen::MatrixXcd channel_;
};

/// Downlink steering vector of the array: entry n = exp(-j*2*pi*(d/lambda)*
/// sin(theta)*n), n = 0-based. Throws std::domain_error unless |angle| < 90.
Eigen::VectorXcd steering_vector(double angle_deg, const ArrayGeometry& geometry);

/// Cascaded spatial frequency omega = 2*pi*(d/lambda)*[sin(arrival) + sin(user)].
double spatial_frequency(double user_angle_deg, double arrival_angle_deg,
                         const ArrayGeometry& geometry);

/// Builds the end-to-end scene from explicit channel parameters.
/// Throws ConfigError if there are more users than elements.
Scene cascaded_channel(double arrival_angle_deg, Complex arrival_gain,
                       std::vector<UserChannel> users, const ArrayGeometry& geometry);

/// Draws a random scene from the configured scenario distribution.
/// Angles are rejection-sampled until the pairwise separation holds; throws
/// GenerationError after config.max_scene_attempts failed attempts.
Scene draw_scene(const ScenarioConfig& config, Rng& rng);

}  // namespace sdris
