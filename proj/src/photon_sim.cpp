#include "qutrit/photon_sim.hpp"

#include <cmath>
#include <random>

#include "qutrit/entanglement.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/estimators.hpp"
#include "qutrit/measurement.hpp"

namespace qutrit {

void SimConfig::validate() const {
  if (!(total_coincidences > 0.0) || !std::isfinite(total_coincidences)) {
    throw ValidationError("total_coincidences must be > 0");
  }
  if (n_repeats < 1) throw ValidationError("n_repeats must be >= 1");
  if (!(background_rate >= 0.0 && background_rate < 1.0)) {
    throw ValidationError("background_rate must lie in [0, 1)");
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t repeat, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(repeat), static_cast<std::uint32_t>(stream)};
  std::uint32_t out[2];
  seq.generate(std::begin(out), std::end(out));
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

CountMatrix sample_count_matrix(const JointDistribution& dist, const SimConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  const std::size_t d = dist.dim();
  const double floor = cfg.background_rate / static_cast<double>(d * d);

  CountMatrix m;
  m.dim = d;
  m.counts.resize(d * d);
  for (std::size_t k = 0; k < d * d; ++k) {
    const double mean =
        cfg.total_coincidences * ((1.0 - cfg.background_rate) * dist.probs()[k] + floor);
    if (mean > 0.0) {
      std::poisson_distribution<std::uint64_t> poisson(mean);
      m.counts[k] = static_cast<double>(poisson(rng));
    } else {
      m.counts[k] = 0.0;
    }
  }
  return m;
}

std::vector<SimulatedSet> simulate_sets(const SchmidtState& state, const SimConfig& cfg) {
  cfg.validate();
  const auto image_dist = joint_computational(state);
  const auto focal_dist = joint_sigma_x_both(state);
  std::vector<SimulatedSet> sets;
  sets.reserve(cfg.n_repeats);
  for (std::size_t r = 0; r < cfg.n_repeats; ++r) {
    SimConfig image_cfg = cfg;
    image_cfg.seed = derive_seed(cfg.seed, r, 0);
    SimConfig focal_cfg = cfg;
    focal_cfg.seed = derive_seed(cfg.seed, r, 1);
    sets.push_back({sample_count_matrix(image_dist, image_cfg),
                    sample_count_matrix(focal_dist, focal_cfg)});
  }
  return sets;
}

PipelineEstimates estimate_from_counts(std::span<const CountMatrix> image,
                                       std::span<const CountMatrix> focal,
                                       std::span<const double> eigenvalues) {
  if (image.empty() || focal.empty()) {
    throw ValidationError("need at least one image-plane and one focal-plane matrix");
  }
  std::vector<double> pcc_z, pcc_x, mp, mi, n_pcc, n_mp, e_mi;
  const auto matching = conjugate_matching();
  for (const auto& counts : image) {
    const auto dist = normalize_counts(counts);
    pcc_z.push_back(pcc(dist, eigenvalues, eigenvalues));
    mi.push_back(mutual_information(dist));
    e_mi.push_back(mi.back());
  }
  for (const auto& counts : focal) {
    const auto dist = normalize_counts(counts);
    pcc_x.push_back(pcc(dist, eigenvalues, eigenvalues));
    n_pcc.push_back(negativity_from_pcc(std::abs(pcc_x.back())));
    mp.push_back(mutual_predictability(dist, matching));
    n_mp.push_back(negativity_from_mp(mp.back()));
  }
  return {repeat_statistics(pcc_z), repeat_statistics(pcc_x), repeat_statistics(mp),
          repeat_statistics(mi),    repeat_statistics(n_pcc), repeat_statistics(n_mp),
          repeat_statistics(e_mi)};
}

PipelineEstimates run_pipeline(const SchmidtState& state, const SimConfig& cfg) {
  const auto sets = simulate_sets(state, cfg);
  std::vector<CountMatrix> image, focal;
  for (const auto& s : sets) {
    image.push_back(s.image);
    focal.push_back(s.focal);
  }
  const auto eigs = standard_eigenvalues();
  return estimate_from_counts(image, focal, eigs);
}

}  // namespace qutrit
