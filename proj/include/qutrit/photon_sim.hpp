#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qutrit/core.hpp"

namespace qutrit {

struct SimConfig {
  double total_coincidences = 1e5;  // mean coincidences per matrix
  std::size_t n_repeats = 5;
  double background_rate = 0.0;     // uniform accidental fraction, in [0, 1)
  std::uint64_t seed = 0;

  /// Throws ValidationError on out-of-range fields.
  void validate() const;
};

/// Independent Poisson counts per cell with mean
/// total * ((1 - b) p_ij + b / d^2). Deterministic for a given cfg.seed.
CountMatrix sample_count_matrix(const JointDistribution& dist, const SimConfig& cfg);

/// Sub-seed for one (repeat, stream) of a run; streams distinguish planes.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t repeat, std::uint64_t stream);

/// One acquisition set: an image-plane (computational basis) matrix and a
/// focal-plane matrix. The focal matrix uses sigma_x positions on both arms,
/// which holds the sigma_x / conjugate-sigma_x outcomes up to a column swap.
struct SimulatedSet {
  CountMatrix image;
  CountMatrix focal;
};

/// n_repeats sets; repeat r uses derive_seed(cfg.seed, r, 0) for the image
/// plane and derive_seed(cfg.seed, r, 1) for the focal plane.
std::vector<SimulatedSet> simulate_sets(const SchmidtState& state, const SimConfig& cfg);

/// Per-matrix correlators and the entanglement values inferred from them,
/// aggregated with repeat_statistics.
struct PipelineEstimates {
  EstimateWithError pcc_image;   // signed PCC, computational basis
  EstimateWithError pcc_focal;   // signed PCC, sigma_x basis
  EstimateWithError mp;          // conjugate matching on focal matrices
  EstimateWithError mi;          // bits, image matrices
  EstimateWithError n_from_pcc;
  EstimateWithError n_from_mp;
  EstimateWithError eof_from_mi;
};

/// Normalizes and analyzes count matrices. Image and focal lists may differ
/// in length but must both be non-empty. `eigenvalues` is applied to rows
/// and columns of both planes.
PipelineEstimates estimate_from_counts(std::span<const CountMatrix> image,
                                       std::span<const CountMatrix> focal,
                                       std::span<const double> eigenvalues);

/// simulate_sets followed by estimate_from_counts with eigenvalues (0, 1, -1).
PipelineEstimates run_pipeline(const SchmidtState& state, const SimConfig& cfg);

}  // namespace qutrit
