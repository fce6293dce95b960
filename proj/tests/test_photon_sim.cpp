#include <cmath>

#include "doctest.h"
#include "qutrit/entanglement.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/measurement.hpp"
#include "qutrit/photon_sim.hpp"

using namespace qutrit;

namespace {
const SchmidtState kState({0.3, 0.8, std::sqrt(0.27)});
}

TEST_CASE("config validation") {
  SimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.total_coincidences = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.n_repeats = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.background_rate = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.background_rate = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("sampling is deterministic under a fixed seed") {
  SimConfig cfg;
  cfg.seed = 42;
  const auto dist = joint_sigma_x_both(kState);
  CHECK(sample_count_matrix(dist, cfg) == sample_count_matrix(dist, cfg));
  SimConfig other = cfg;
  other.seed = 43;
  CHECK_FALSE(sample_count_matrix(dist, cfg) == sample_count_matrix(dist, other));

  const auto a = simulate_sets(kState, cfg);
  const auto b = simulate_sets(kState, cfg);
  REQUIRE(a.size() == 5);
  for (std::size_t r = 0; r < a.size(); ++r) {
    CHECK(a[r].image == b[r].image);
    CHECK(a[r].focal == b[r].focal);
  }
  CHECK_FALSE(a[0].focal == a[1].focal);
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 1, 0));
  CHECK(derive_seed(1, 2, 1) == derive_seed(1, 2, 1));
}

TEST_CASE("point mass and uniform distributions") {
  SimConfig cfg;
  cfg.total_coincidences = 5e4;
  cfg.seed = 7;
  const auto point = sample_count_matrix(joint_computational(SchmidtState({0.0, 1.0, 0.0})), cfg);
  for (std::size_t k = 0; k < 9; ++k) {
    if (k == 4) {
      CHECK(std::abs(point.counts[k] - 5e4) <= 5.0 * std::sqrt(5e4));
    } else {
      CHECK(point.counts[k] == 0.0);
    }
  }

  const JointDistribution uniform(3, std::vector<double>(9, 1.0 / 9.0));
  cfg.total_coincidences = 9e4;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    cfg.seed = seed;
    const auto m = sample_count_matrix(uniform, cfg);
    for (double c : m.counts) CHECK(std::abs(c - 1e4) <= 5.0 * 100.0);
  }

  // Full background on a point mass spreads counts over every cell.
  cfg.background_rate = 0.5;
  const auto mixed = sample_count_matrix(joint_computational(SchmidtState({1.0, 0.0, 0.0})), cfg);
  for (std::size_t k = 1; k < 9; ++k) CHECK(std::abs(mixed.counts[k] - 5e3) <= 5.0 * std::sqrt(5e3));
}

TEST_CASE("pipeline recovers the negativity") {
  SimConfig cfg;
  cfg.seed = 2019;
  const auto est = run_pipeline(kState, cfg);
  const double n = negativity(kState);
  CHECK(est.n_from_pcc.n_samples == 5);
  CHECK(std::abs(est.n_from_pcc.mean - n) <= 3.0 * est.n_from_pcc.std);
  CHECK(std::abs(est.n_from_mp.mean - n) <= 3.0 * est.n_from_mp.std);
  CHECK(std::abs(est.n_from_pcc.mean - n) < 0.01);
  CHECK(std::abs(est.n_from_mp.mean - n) < 0.01);
  CHECK(std::abs(est.eof_from_mi.mean - eof(kState)) < 0.01);
  CHECK(est.pcc_image.mean == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(est.pcc_focal.mean < 0.0);
}

TEST_CASE("pipeline estimates are unbiased across seeds") {
  const double n = negativity(kState);
  SimConfig cfg;
  cfg.n_repeats = 1;
  double sum_pcc = 0.0, sum_mp = 0.0, sq_pcc = 0.0;
  const int runs = 200;
  for (int s = 0; s < runs; ++s) {
    cfg.seed = 1000 + s;
    const auto est = run_pipeline(kState, cfg);
    sum_pcc += est.n_from_pcc.mean;
    sq_pcc += est.n_from_pcc.mean * est.n_from_pcc.mean;
    sum_mp += est.n_from_mp.mean;
  }
  const double mean_pcc = sum_pcc / runs;
  const double sd_pcc = std::sqrt(sq_pcc / runs - mean_pcc * mean_pcc);
  CHECK(std::abs(mean_pcc - n) <= 4.0 * sd_pcc / std::sqrt(double(runs)));
  CHECK(std::abs(sum_mp / runs - n) <= 5e-4);
}

TEST_CASE("background lowers the inferred negativity") {
  SimConfig cfg;
  cfg.seed = 5;
  const double clean = run_pipeline(kState, cfg).n_from_pcc.mean;
  cfg.background_rate = 0.2;
  const double noisy = run_pipeline(kState, cfg).n_from_pcc.mean;
  CHECK(noisy < clean);
  CHECK(noisy == doctest::Approx(0.8 * negativity(kState)).epsilon(0.02));
}

TEST_CASE("product state has no image-plane variance") {
  SimConfig cfg;
  CHECK_THROWS_AS(run_pipeline(SchmidtState({1.0, 0.0, 0.0}), cfg), DegenerateVariance);
  const std::vector<CountMatrix> none;
  CountMatrix flat;
  flat.counts.assign(9, 1.0);
  const std::vector<CountMatrix> one{flat};
  const auto eigs = standard_eigenvalues();
  CHECK_THROWS_AS(estimate_from_counts(none, one, eigs), ValidationError);
  CHECK_THROWS_AS(estimate_from_counts(one, none, eigs), ValidationError);
}
