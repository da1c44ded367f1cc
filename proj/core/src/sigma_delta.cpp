// SPDX-License-Identifier: Apache-2.0

#include "sdris/sigma_delta.hpp"

#include <cmath>
#include <stdexcept>

namespace sdris {

void modulate_into(const Eigen::Ref<const Eigen::VectorXcd>& input,
                   const ModulatorConfig& config, Eigen::Ref<Eigen::VectorXcd> output,
                   Eigen::Ref<Eigen::VectorXcd> errors) {
  const Eigen::Index n = input.size();
  if (n < 1) throw std::invalid_argument("modulator input must be nonempty");
  const Complex rot = std::polar(1.0, config.steer_phase);
  Complex q_prev{0.0, 0.0};
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex b = input(i) - rot * q_prev;
    const QuantizeResult r = quantize(b, config.alphabet);
    output(i) = r.point;
    errors(i) = r.error;
    q_prev = r.error;
  }
}

ModulatorRun modulate(const Eigen::Ref<const Eigen::VectorXcd>& input,
                      const ModulatorConfig& config) {
  ModulatorRun run;
  run.input = input;
  run.output.resize(input.size());
  run.errors.resize(input.size());
  modulate_into(run.input, config, run.output, run.errors);
  return run;
}

double steer_phase_for(double sector_center_deg, double arrival_angle_deg,
                       const ArrayGeometry& geometry) {
  if (!(std::abs(sector_center_deg) < 90.0) || !(std::abs(arrival_angle_deg) < 90.0))
    throw std::domain_error("steer_phase_for requires |angles| < 90 deg");
  return wrap_to_pi(spatial_frequency(sector_center_deg, arrival_angle_deg, geometry));
}

Eigen::VectorXd shaped_error_spectrum(const ModulatorRun& run, const ModulatorConfig& config,
                                      const Eigen::Ref<const Eigen::VectorXd>& angle_grid_deg,
                                      double arrival_angle_deg, const ArrayGeometry& geometry) {
  const Eigen::Index n = run.errors.size();
  if (n < 1) throw std::invalid_argument("shaped_error_spectrum requires a nonempty run");
  // Shaped sequence c_n = q_n - e^{j phi} q_{n-1}, q_{-1} = 0; this equals
  // output - input of the run.
  const Complex rot = std::polar(1.0, config.steer_phase);
  Eigen::VectorXcd shaped(n);
  shaped(0) = run.errors(0);
  for (Eigen::Index i = 1; i < n; ++i) shaped(i) = run.errors(i) - rot * run.errors(i - 1);

  Eigen::VectorXd power(angle_grid_deg.size());
  for (Eigen::Index g = 0; g < angle_grid_deg.size(); ++g) {
    const double omega = spatial_frequency(angle_grid_deg(g), arrival_angle_deg, geometry);
    Complex acc{0.0, 0.0};
    // Direct evaluation of the inner product with the steering row at omega.
    const Complex w = std::polar(1.0, -omega);
    Complex phase{1.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i) {
      acc += shaped(i) * phase;
      phase *= w;
    }
    power(g) = std::norm(acc);
  }
  return power;
}

}  // namespace sdris
