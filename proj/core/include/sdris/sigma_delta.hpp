// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "sdris/common.hpp"
#include "sdris/quantizer.hpp"
#include "sdris/scene.hpp"

namespace sdris {

/// First-order spatial sigma-delta modulator with a phase-rotated feedback
/// path: the rotation exp(j*steer_phase) moves the quantization-noise null
/// from broadside to a chosen sector.
struct ModulatorConfig {
  PhaseAlphabet alphabet = PhaseAlphabet::continuous();
  double steer_phase = 0.0;  // phi, radians, in [-pi, pi)
  /// Advisory amplitude bound used by precoders when scaling inputs; the
  /// modulator itself accepts any amplitude (overloading is legal, it only
  /// voids the |q_n| <= 1 guarantee).
  double amplitude_cap = 1.0;

  static ModulatorConfig with_alphabet(PhaseAlphabet a, double steer_phase = 0.0) {
    return ModulatorConfig{a, wrap_to_pi(steer_phase), a.no_overload_amplitude()};
  }
};

/// One pass of the modulator: input x̄, constant-envelope output x and the
/// quantization error sequence q, kept for diagnostics. The defining
/// identity x_n = x̄_n + q_n - exp(j*phi) q_{n-1} (q_0 = 0) holds exactly.
struct ModulatorRun {
  Eigen::VectorXcd input;
  Eigen::VectorXcd output;
  Eigen::VectorXcd errors;
};

/// Runs the modulator over the element index. The recursion is sequential by
/// construction; distinct calls are independent and freely parallel.
ModulatorRun modulate(const Eigen::Ref<const Eigen::VectorXcd>& input,
                      const ModulatorConfig& config);

/// Allocation-free kernel used by the precoder's per-slot passes.
void modulate_into(const Eigen::Ref<const Eigen::VectorXcd>& input,
                   const ModulatorConfig& config, Eigen::Ref<Eigen::VectorXcd> output,
                   Eigen::Ref<Eigen::VectorXcd> errors);

/// Feedback phase that centers the noise null on a target sector:
/// phi* = 2*pi*(d/lambda)*[sin(arrival) + sin(center)], wrapped to [-pi, pi).
double steer_phase_for(double sector_center_deg, double arrival_angle_deg,
                       const ArrayGeometry& geometry);

/// Shaped-error power |sum_n (q_n - e^{j phi} q_{n-1}) e^{-j omega(theta) n}|^2
/// evaluated on a grid of departure angles; all N terms are kept exactly.
/// Averaged over runs this exposes the spectral notch at the steered angle.
Eigen::VectorXd shaped_error_spectrum(const ModulatorRun& run, const ModulatorConfig& config,
                                      const Eigen::Ref<const Eigen::VectorXd>& angle_grid_deg,
                                      double arrival_angle_deg, const ArrayGeometry& geometry);

}  // namespace sdris
