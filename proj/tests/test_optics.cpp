#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/measurement.hpp"
#include "qutrit/optics.hpp"

using namespace qutrit;

TEST_CASE("geometry validation") {
  OpticsGeometry g;
  CHECK_NOTHROW(g.validate());
  CHECK(g.fringe_period_um() == doctest::Approx(607.5));
  g.slit_separation_um = 20.0;
  CHECK_THROWS_AS(g.validate(), ValidationError);
  g = {};
  g.wavelength_um = 0.0;
  CHECK_THROWS_AS(g.validate(), ValidationError);
  g = {};
  g.magnification = -1.0;
  CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("eigen positions and phase") {
  const OpticsGeometry g;
  const auto x = eigen_positions(g);
  CHECK(std::abs(x[0] - 0.0) <= 1e-9);
  CHECK(std::abs(x[1] - 202.5) <= 1e-9);
  CHECK(std::abs(x[2] - 405.0) <= 1e-9);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(theta_of_position(x[k], g) == doctest::Approx(2.0 * std::numbers::pi * double(k) / 3.0));
  }
  // Linear in x with slope 2 pi / 607.5.
  CHECK(theta_of_position(1.0, g) == doctest::Approx(2.0 * std::numbers::pi / 607.5));
  CHECK(theta_of_position(-300.0, g) == doctest::Approx(-300.0 * theta_of_position(1.0, g)));

  OpticsGeometry longer = g;
  longer.focal_length_mm *= 2.0;
  CHECK(longer.fringe_period_um() == doctest::Approx(2.0 * g.fringe_period_um()));
  CHECK(eigen_positions(longer)[1] == doctest::Approx(405.0));
  OpticsGeometry wider = g;
  wider.slit_separation_um *= 2.0;
  CHECK(wider.fringe_period_um() == doctest::Approx(0.5 * g.fringe_period_um()));

  const auto z = sigma_z_operator_positions(g);
  CHECK(z[1] == 100.0);
  CHECK(z[2] == 200.0);
}

TEST_CASE("scan sampling") {
  CHECK(sample_positions(-2000.0, 2000.0, 30.0).size() == 134);
  const auto xs = sample_positions(0.0, 1.0, 0.1);
  CHECK(xs.size() == 11);
  CHECK(xs.back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(sample_positions(0.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(sample_positions(1.0, 0.0, 0.1), ValidationError);
}

TEST_CASE("focal intensity matches the sigma_x joint distribution") {
  const OpticsGeometry g;
  const auto x = eigen_positions(g);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const auto s = oracle::random_state(rng);
    const auto dist = joint_sigma_x_both(s);
    for (std::size_t k = 0; k < 3; ++k) {
      const double local = focal_intensity(x[k], s, g) / slit_envelope(x[k], g);
      CHECK(std::abs(local - 9.0 * dist(0, k)) <= 1e-12);
    }
  }
  CHECK(slit_envelope(0.0, g) == 1.0);
  CHECK(slit_envelope(607.5 * 100.0 / 30.0, g) == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("focal profile shape") {
  const OpticsGeometry g;
  const auto me = focal_coincidence_profile(SchmidtState::maximally_entangled(), g, -2025.0, 2025.0, 7.5);
  CHECK_NOTHROW(me.validate());
  double peak = 0.0;
  for (double v : me.values) peak = std::max(peak, v);
  CHECK(peak == doctest::Approx(1.0));
  CHECK(visibility(me, g.fringe_period_um()) == doctest::Approx(1.0).epsilon(1e-12));

  // Mirror symmetry for real coefficients.
  const auto p = focal_coincidence_profile(SchmidtState({0.3, 0.8, std::sqrt(0.27)}), g, -900.0, 900.0, 10.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.values[i] == doctest::Approx(p.values[p.size() - 1 - i]).epsilon(1e-12));
  }

  // Narrow slits: the envelope flattens, zeros stay at the eigen positions.
  OpticsGeometry narrow = g;
  narrow.slit_width_um = 1e-3;
  const auto n = focal_coincidence_profile(SchmidtState::maximally_entangled(), narrow, -1215.0, 1215.0, 7.5);
  CHECK(visibility(n, narrow.fringe_period_um()) == doctest::Approx(1.0).epsilon(1e-12));

  // Lower visibility for a less entangled state and with accidental background.
  const double v_partial = visibility(p, g.fringe_period_um());
  CHECK(v_partial < 1.0);
  double last = 1.0 + 1e-12;
  for (double f : {0.0, 0.05, 0.1, 0.3}) {
    const double v = visibility(with_background(me, f), g.fringe_period_um());
    CHECK(v < last);
    last = v;
  }

  Profile flat{{0.0, 300.0, 600.0, 900.0}, {1.0, 1.0, 1.0, 1.0}};
  CHECK(visibility(flat, 607.5) == 0.0);
  Profile shortscan{{0.0, 100.0, 200.0}, {1.0, 0.5, 1.0}};
  CHECK_THROWS_AS(visibility(shortscan, 607.5), InsufficientSpan);
  Profile two{{0.0, 700.0}, {1.0, 0.5}};
  CHECK_THROWS_AS(visibility(two, 607.5), InsufficientSpan);
}

TEST_CASE("fringe period recovered from samples") {
  const OpticsGeometry g;
  const auto me = focal_coincidence_profile(SchmidtState::maximally_entangled(), g, -2000.0, 2000.0, 30.0);
  CHECK(std::abs(estimate_fringe_period(me) - 607.5) <= 0.1);

  const auto fine = focal_coincidence_profile(SchmidtState::maximally_entangled(), g, -2000.0, 2000.0, 5.0);
  CHECK(std::abs(estimate_fringe_period(fine) - 607.5) <= 0.1);

  OpticsGeometry longer = g;
  longer.focal_length_mm = 150.0;
  const auto l = focal_coincidence_profile(SchmidtState::maximally_entangled(), longer, -4000.0, 4000.0, 30.0);
  CHECK(std::abs(estimate_fringe_period(l) - 1215.0) <= 0.2);

  const auto tiny = focal_coincidence_profile(SchmidtState::maximally_entangled(), g, 0.0, 300.0, 30.0);
  CHECK_THROWS_AS(estimate_fringe_period(tiny), InsufficientSpan);
}

TEST_CASE("image-plane profile") {
  const OpticsGeometry g;
  const SchmidtState s({0.3, 0.8, std::sqrt(0.27)});
  const auto p = image_plane_profile(s, g, 5.0, -100.0, 300.0, 10.0);
  CHECK_NOTHROW(p.validate());
  auto at = [&](double x) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (std::abs(p.positions_um[i] - x) < 1e-9) return p.values[i];
    }
    return -1.0;
  };
  CHECK(at(100.0) == doctest::Approx(1.0));
  CHECK(at(0.0) == doctest::Approx(0.09 / 0.64).epsilon(1e-6));
  CHECK(at(200.0) == doctest::Approx(0.27 / 0.64).epsilon(1e-6));
  CHECK(at(50.0) < 1e-3);

  // Magnification moves the slit images.
  OpticsGeometry mag = g;
  mag.magnification = 2.0;
  const auto m = image_plane_profile(s, mag, 5.0, -100.0, 500.0, 10.0);
  const auto top = std::max_element(m.values.begin(), m.values.end()) - m.values.begin();
  CHECK(m.positions_um[top] == doctest::Approx(200.0));

  const auto hat = image_plane_profile(s, g, 0.0, -100.0, 300.0, 10.0);
  CHECK(hat.values[0] == 0.0);
  CHECK_THROWS_AS(image_plane_profile(s, g, -1.0, -100.0, 300.0, 10.0), ValidationError);
  CHECK_THROWS_AS(image_plane_profile(SchmidtState({0.6, 0.8}), g, 5.0, -100.0, 300.0, 10.0), DimensionError);
}

TEST_CASE("background mixing") {
  Profile p{{0.0, 1.0, 2.0}, {1.0, 0.0, 0.5}};
  const auto b = with_background(p, 0.2);
  CHECK(b.values[0] == doctest::Approx(1.0));
  CHECK(b.values[1] == doctest::Approx(0.2));
  CHECK(b.values[2] == doctest::Approx(0.6));
  CHECK_THROWS_AS(with_background(p, 1.5), ValidationError);
}
