#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qutrit/core.hpp"

namespace qutrit {

inline constexpr double kVarianceCutoff = 1e-15;

/// Outcome of the correlation-sum entanglement test |C1| + |C2| > threshold.
struct CertificationResult {
  double pcc_sum = 0.0;
  bool certified = false;
  double threshold = 1.0;
};

/// Pearson correlation of the outcome values `eigs_a` (rows) and `eigs_b`
/// (columns) under `dist`. Throws DegenerateVariance when either marginal
/// variance is <= kVarianceCutoff, DimensionError on length mismatch.
double pcc(const JointDistribution& dist, std::span<const double> eigs_a,
           std::span<const double> eigs_b);

using CellIndex = std::pair<std::size_t, std::size_t>;

/// Sum of the matched cells. `matching` must hold exactly d cells with
/// distinct rows and distinct columns (IndexError otherwise).
double mutual_predictability(const JointDistribution& dist, std::span<const CellIndex> matching);

/// Identity pairing (i, i).
std::vector<CellIndex> diagonal_matching(std::size_t dim);

/// Pairing {(0,0), (1,2), (2,1)}: the correlated cells of a sigma_x-on-both
/// table, i.e. the diagonal of the sigma_x / conjugate-sigma_x table after
/// relabeling the conjugate outcomes.
std::vector<CellIndex> conjugate_matching();

/// Plug-in mutual information in bits, with 0 log 0 = 0.
double mutual_information(const JointDistribution& dist);

/// Divides every cell by the grand total. Throws EmptyMatrix when it is 0.
JointDistribution normalize_counts(const CountMatrix& counts);

/// Throws DomainError when |pcc| exceeds 1 by more than 1e-9.
CertificationResult certify_by_pcc_sum(double pcc1, double pcc2);

/// Mean and sample (n - 1) standard deviation. Throws DomainError when empty.
EstimateWithError repeat_statistics(std::span<const double> values);

}  // namespace qutrit
