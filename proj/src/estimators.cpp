#include "qutrit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qutrit/errors.hpp"

namespace qutrit {

double pcc(const JointDistribution& dist, std::span<const double> eigs_a,
           std::span<const double> eigs_b) {
  const std::size_t d = dist.dim();
  if (eigs_a.size() != d || eigs_b.size() != d) {
    throw DimensionError("eigenvalue lists must match the distribution dimension");
  }
  const auto pa = dist.row_marginal();
  const auto pb = dist.col_marginal();

  // Central moments avoid cancellation in <A^2> - <A>^2 for near-product data.
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    mean_a += pa[i] * eigs_a[i];
    mean_b += pb[i] * eigs_b[i];
  }
  double var_a = 0.0, var_b = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    var_a += pa[i] * (eigs_a[i] - mean_a) * (eigs_a[i] - mean_a);
    var_b += pb[i] * (eigs_b[i] - mean_b) * (eigs_b[i] - mean_b);
    for (std::size_t j = 0; j < d; ++j) {
      cov += dist(i, j) * (eigs_a[i] - mean_a) * (eigs_b[j] - mean_b);
    }
  }
  if (var_a <= kVarianceCutoff || var_b <= kVarianceCutoff) {
    throw DegenerateVariance("marginal variance vanishes (var_a = " + std::to_string(var_a) +
                             ", var_b = " + std::to_string(var_b) + ")");
  }
  return cov / std::sqrt(var_a * var_b);
}

double mutual_predictability(const JointDistribution& dist, std::span<const CellIndex> matching) {
  const std::size_t d = dist.dim();
  if (matching.size() != d) {
    throw IndexError("matching must contain exactly " + std::to_string(d) + " cells");
  }
  std::vector<bool> row_used(d, false), col_used(d, false);
  double total = 0.0;
  for (const auto& [row, col] : matching) {
    if (row >= d || col >= d) throw IndexError("matched cell out of range");
    if (row_used[row] || col_used[col]) throw IndexError("matching reuses a row or column");
    row_used[row] = col_used[col] = true;
    total += dist(row, col);
  }
  return total;
}

std::vector<CellIndex> diagonal_matching(std::size_t dim) {
  std::vector<CellIndex> m;
  for (std::size_t i = 0; i < dim; ++i) m.emplace_back(i, i);
  return m;
}

std::vector<CellIndex> conjugate_matching() { return {{0, 0}, {1, 2}, {2, 1}}; }

double mutual_information(const JointDistribution& dist) {
  const std::size_t d = dist.dim();
  const auto pa = dist.row_marginal();
  const auto pb = dist.col_marginal();
  double mi = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double p = dist(i, j);
      if (p > 0.0) mi += p * std::log2(p / (pa[i] * pb[j]));
    }
  }
  // Rounding can leave a tiny negative value for independent tables.
  return std::max(mi, 0.0);
}

JointDistribution normalize_counts(const CountMatrix& counts) {
  counts.validate();
  const double total = counts.total();
  if (!(total > 0.0)) throw EmptyMatrix("count matrix has zero total");
  std::vector<double> probs(counts.counts.size());
  for (std::size_t k = 0; k < probs.size(); ++k) probs[k] = counts.counts[k] / total;
  return JointDistribution(counts.dim, std::move(probs), "signal", "idler");
}

CertificationResult certify_by_pcc_sum(double pcc1, double pcc2) {
  constexpr double slack = 1e-9;
  if (std::abs(pcc1) > 1.0 + slack || std::abs(pcc2) > 1.0 + slack) {
    throw DomainError("Pearson coefficients must lie in [-1, 1]");
  }
  CertificationResult r;
  r.pcc_sum = std::abs(pcc1) + std::abs(pcc2);
  r.certified = r.pcc_sum > r.threshold;
  return r;
}

EstimateWithError repeat_statistics(std::span<const double> values) {
  if (values.empty()) throw DomainError("repeat statistics need at least one value");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  EstimateWithError e;
  e.mean = mean;
  e.n_samples = values.size();
  e.std = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return e;
}

}  // namespace qutrit
