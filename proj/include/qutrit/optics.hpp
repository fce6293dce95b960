#pragma once

#include <array>
#include <vector>

#include "qutrit/core.hpp"

namespace qutrit {

/// Triple-slit spatial-bin apparatus. Lengths in micrometres except the
/// lens focal length, which is in millimetres.
struct OpticsGeometry {
  double slit_width_um = 30.0;
  double slit_separation_um = 100.0;
  double wavelength_um = 0.810;
  double focal_length_mm = 75.0;
  std::size_t n_slits = 3;
  double magnification = 1.0;  // crystal-to-detector imaging, image plane only

  /// Throws ValidationError for non-positive lengths or d <= a.
  void validate() const;

  double focal_length_um() const { return focal_length_mm * 1000.0; }

  /// Far-field fringe period lambda f / d.
  double fringe_period_um() const;
};

/// Sampled detector scan; values are peak-normalized intensities.
struct Profile {
  std::vector<double> positions_um;
  std::vector<double> values;

  std::size_t size() const { return positions_um.size(); }
  /// Throws ValidationError unless positions strictly increase and values >= 0.
  void validate() const;
};

/// Positions x_min + k * step for every k with x_min + k * step <= x_max.
std::vector<double> sample_positions(double x_min, double x_max, double step);

/// Far-field phase 2 pi x d / (lambda f).
double theta_of_position(double x_um, const OpticsGeometry& geom);

/// Detector positions where the phase is 0, 2 pi/3 and 4 pi/3.
std::array<double, 3> eigen_positions(const OpticsGeometry& geom);

/// Single-slit envelope sinc^2(k_x a / 2) with k_x = 2 pi x / (lambda f).
double slit_envelope(double x_um, const OpticsGeometry& geom);

/// Unnormalized focal-plane coincidence rate with the signal detector fixed
/// at the singles centre: envelope * |<phi(theta)|psi_local>|^2, where
/// |phi(theta)> = sum_n exp(i n theta) |n> and psi_local has amplitudes c_n.
double focal_intensity(double x_um, const SchmidtState& state, const OpticsGeometry& geom);

Profile focal_coincidence_profile(const SchmidtState& state, const OpticsGeometry& geom,
                                  double x_min_um, double x_max_um, double step_um);

/// Slit-image centres for the eigenvalues (+1, 0, -1) of sigma_z, i.e. the
/// images of slits 0, 1, 2 at n * d * magnification.
std::array<double, 3> sigma_z_operator_positions(const OpticsGeometry& geom);

/// Image-plane singles: slit images of width a * magnification weighted by
/// c_n^2, each blurred by a Gaussian detector response of width sigma.
Profile image_plane_profile(const SchmidtState& state, const OpticsGeometry& geom,
                            double detector_sigma_um, double x_min_um, double x_max_um,
                            double step_um);

/// Adds a flat accidental floor: v -> (1 - f) v + f, then renormalizes.
Profile with_background(const Profile& profile, double fraction);

/// (max - min)/(max + min) within one fringe period centred on the highest
/// sample. Throws InsufficientSpan when the scan is shorter than one period.
double visibility(const Profile& profile, double fringe_period_um);

/// Fringe period recovered from the samples alone: a coarse estimate from
/// the autocorrelation, refined with interpolated minima one period apart.
double estimate_fringe_period(const Profile& profile);

}  // namespace qutrit
