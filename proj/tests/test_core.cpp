#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qutrit/core.hpp"
#include "qutrit/errors.hpp"

using namespace qutrit;

TEST_CASE("schmidt state construction") {
  const double r = 1.0 / std::sqrt(3.0);
  CHECK_NOTHROW(SchmidtState({r, r, r}));
  CHECK_NOTHROW(SchmidtState({0.3, 0.8, std::sqrt(0.27)}));
  CHECK_THROWS_AS(SchmidtState({0.5, 0.5, 0.5}), NormalizationError);
  CHECK_THROWS_AS(SchmidtState({-0.6, 0.8, 0.0}), NegativeCoefficient);
  CHECK_THROWS_AS(SchmidtState({1.0}), DimensionError);

  // No silent renormalization.
  CHECK_THROWS_AS(SchmidtState({0.6, 0.8, 1e-6}), NormalizationError);

  SchmidtState s({0.3, 0.8, std::sqrt(0.27)});
  CHECK(s.dim() == 3);
  CHECK(s[1] == 0.8);  // input order kept
}

TEST_CASE("state from two coefficients") {
  const auto s = state_from_two_coeffs(0.1, 0.1);
  CHECK(s[2] == doctest::Approx(0.98995).epsilon(1e-5));
  CHECK(s[2] == std::sqrt(0.98));

  const auto p = state_from_two_coeffs(1.0, 0.0);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == 0.0);

  CHECK_THROWS_AS(state_from_two_coeffs(0.8, 0.8), DomainError);
  CHECK_THROWS_AS(state_from_two_coeffs(-0.1, 0.1), DomainError);

  // Agrees with the direct constructor.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 0.7);
  for (int k = 0; k < 200; ++k) {
    const double c0 = u(rng), c1 = u(rng);
    const auto a = state_from_two_coeffs(c0, c1);
    const SchmidtState b({c0, c1, std::sqrt(1.0 - c0 * c0 - c1 * c1)});
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-15);
  }
}

TEST_CASE("generalized sigma_x basis") {
  const auto b = generalized_sigma_x_basis();
  CHECK(b.label() == BasisLabel::GeneralizedSigmaX);
  CHECK(b.orthonormality_error() < 1e-12);

  const double r = 1.0 / std::sqrt(3.0);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(b.vector(k)[0] - Complex(r, 0.0)) < 1e-15);
  }
  const Complex omega_over_sqrt3 = Complex(-0.5, std::sqrt(3.0) / 2.0) / std::sqrt(3.0);
  CHECK(std::abs(b.vector(1)[1] - omega_over_sqrt3) < 1e-15);

  // Matches exp(2 pi i k n / 3) / sqrt 3 entrywise.
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t n = 0; n < 3; ++n) {
      const Complex expected = std::polar(r, 2.0 * std::numbers::pi * double(k * n) / 3.0);
      CHECK(std::abs(b.vector(k)[n] - expected) < 1e-15);
    }
  }

  Complex inner{};
  for (std::size_t n = 0; n < 3; ++n) inner += std::conj(b.vector(1)[n]) * b.vector(2)[n];
  CHECK(std::abs(inner) < 1e-15);
}

TEST_CASE("mutually unbiased with the computational basis") {
  const auto x = generalized_sigma_x_basis();
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t n = 0; n < 3; ++n) CHECK(std::norm(x.vector(k)[n]) == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("conjugate basis") {
  const auto x = generalized_sigma_x_basis();
  const auto xc = conjugate_basis(x);
  CHECK(xc.label() == BasisLabel::ConjugateSigmaX);
  const std::size_t swap[3] = {0, 2, 1};
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t n = 0; n < 3; ++n) CHECK(std::abs(xc.vector(k)[n] - x.vector(swap[k])[n]) < 1e-15);
  }

  const auto z = computational_basis();
  const auto zc = conjugate_basis(z);
  CHECK(zc.label() == BasisLabel::Computational);
  CHECK(zc.vectors() == z.vectors());

  // Involution, including a random unitary basis.
  const auto xcc = conjugate_basis(xc);
  CHECK(xcc.vectors() == x.vectors());
  CHECK(xcc.label() == BasisLabel::GeneralizedSigmaX);

  const double t = 0.37;
  std::vector<std::vector<Complex>> rot = {
      {std::polar(std::cos(t), 0.4), std::polar(std::sin(t), 1.1), 0.0},
      {std::polar(-std::sin(t), 0.4), std::polar(std::cos(t), 1.1), 0.0},
      {0.0, 0.0, std::polar(1.0, -2.0)}};
  const Basis custom(rot);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t n = 0; n < 3; ++n) {
      CHECK(std::abs(conjugate_basis(conjugate_basis(custom)).vector(k)[n] - custom.vector(k)[n]) <= 1e-15);
    }
  }
}

TEST_CASE("basis validation") {
  std::vector<std::vector<Complex>> bad = {{1.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(Basis{bad}, ValidationError);
  std::vector<std::vector<Complex>> ragged = {{1.0, 0.0}, {0.0}};
  CHECK_THROWS_AS(Basis{ragged}, DimensionError);
  CHECK(computational_basis(5).orthonormality_error() == 0.0);
}

TEST_CASE("observable and distributions") {
  CHECK_THROWS_AS(Observable(computational_basis(), {0.0, 1.0}), DimensionError);
  const Observable o(generalized_sigma_x_basis(), standard_eigenvalues());
  CHECK(o.eigenvalues()[2] == -1.0);

  CHECK_THROWS_AS(JointDistribution(2, {0.5, 0.5, 0.5, 0.0}), NormalizationError);
  CHECK_THROWS_AS(JointDistribution(2, {1.2, -0.2, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(JointDistribution(2, {1.0}), DimensionError);
  const JointDistribution d(2, {0.1, 0.2, 0.3, 0.4});
  CHECK(d.row_marginal()[1] == doctest::Approx(0.7));
  CHECK(d.col_marginal()[1] == doctest::Approx(0.6));
}

TEST_CASE("count matrix and estimates") {
  CountMatrix m;
  m.counts = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK(m.total() == 45.0);
  CHECK_NOTHROW(m.validate());
  m.counts.pop_back();
  CHECK_THROWS_AS(m.validate(), ShapeError);

  EstimateWithError e{0.9, 0.02, 4};
  CHECK(e.std_of_mean() == doctest::Approx(0.01));
}
