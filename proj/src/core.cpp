#include "qutrit/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qutrit/errors.hpp"

namespace qutrit {

SchmidtState::SchmidtState(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) {
    throw DimensionError("a Schmidt state needs at least 2 coefficients");
  }
  double norm = 0.0;
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw DomainError("non-finite Schmidt coefficient");
    if (c < 0.0) throw NegativeCoefficient("coefficient " + std::to_string(c) + " < 0");
    norm += c * c;
  }
  if (std::abs(norm - 1.0) > kStateNormTol) {
    throw NormalizationError("sum of squared coefficients is " + std::to_string(norm));
  }
}

SchmidtState SchmidtState::maximally_entangled(std::size_t dim) {
  return SchmidtState(std::vector<double>(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

SchmidtState state_from_two_coeffs(double c0, double c1) {
  if (c0 < 0.0 || c1 < 0.0) throw DomainError("coefficients must be nonnegative");
  const double rest = 1.0 - (c0 * c0 + c1 * c1);
  if (rest < 0.0) {
    throw DomainError("c0^2 + c1^2 = " + std::to_string(1.0 - rest) + " exceeds 1");
  }
  return SchmidtState({c0, c1, std::sqrt(rest)});
}

std::string to_string(BasisLabel label) {
  switch (label) {
    case BasisLabel::Computational: return "computational";
    case BasisLabel::GeneralizedSigmaX: return "sigma_x";
    case BasisLabel::ConjugateSigmaX: return "sigma_x_conjugate";
    case BasisLabel::Custom: return "custom";
  }
  return "custom";
}

Basis::Basis(std::vector<std::vector<Complex>> vectors, BasisLabel label)
    : vectors_(std::move(vectors)), label_(label) {
  if (vectors_.empty()) throw DimensionError("empty basis");
  for (const auto& v : vectors_) {
    if (v.size() != vectors_.size()) throw DimensionError("basis vectors must have length d");
  }
  if (orthonormality_error() > kBasisTol) {
    throw ValidationError("basis is not orthonormal");
  }
}

double Basis::orthonormality_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      Complex inner{};
      for (std::size_t n = 0; n < dim(); ++n) inner += std::conj(vectors_[i][n]) * vectors_[j][n];
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner - target));
    }
  }
  return worst;
}

Basis computational_basis(std::size_t dim) {
  std::vector<std::vector<Complex>> vs(dim, std::vector<Complex>(dim));
  for (std::size_t k = 0; k < dim; ++k) vs[k][k] = 1.0;
  return Basis(std::move(vs), BasisLabel::Computational);
}

Basis generalized_sigma_x_basis() {
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  // w^m for m = 0, 1, 2 written out exactly rather than via exp().
  const Complex powers[3] = {
      {1.0, 0.0},
      {-0.5, std::numbers::sqrt3 / 2.0},
      {-0.5, -std::numbers::sqrt3 / 2.0},
  };
  std::vector<std::vector<Complex>> vs(3, std::vector<Complex>(3));
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t n = 0; n < 3; ++n) vs[k][n] = powers[(k * n) % 3] * inv_sqrt3;
  }
  return Basis(std::move(vs), BasisLabel::GeneralizedSigmaX);
}

Basis conjugate_basis(const Basis& basis) {
  auto vs = basis.vectors();
  for (auto& v : vs) {
    for (auto& z : v) z = std::conj(z);
  }
  BasisLabel label = basis.label();
  if (label == BasisLabel::GeneralizedSigmaX) {
    label = BasisLabel::ConjugateSigmaX;
  } else if (label == BasisLabel::ConjugateSigmaX) {
    label = BasisLabel::GeneralizedSigmaX;
  }
  return Basis(std::move(vs), label);
}

std::vector<double> standard_eigenvalues() { return {0.0, 1.0, -1.0}; }

Observable::Observable(Basis basis, std::vector<double> eigenvalues)
    : basis_(std::move(basis)), eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.size() != basis_.dim()) {
    throw DimensionError("observable needs one eigenvalue per basis vector");
  }
}

JointDistribution::JointDistribution(std::size_t dim, std::vector<double> probs,
                                     std::string row_label, std::string col_label)
    : dim_(dim), probs_(std::move(probs)), row_label_(std::move(row_label)),
      col_label_(std::move(col_label)) {
  if (dim_ == 0 || probs_.size() != dim_ * dim_) {
    throw DimensionError("joint distribution needs d*d entries");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("probabilities must be finite and >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > kDistributionTol) {
    throw NormalizationError("joint probabilities sum to " + std::to_string(total));
  }
}

std::vector<double> JointDistribution::row_marginal() const {
  std::vector<double> m(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m[i] += (*this)(i, j);
  }
  return m;
}

std::vector<double> JointDistribution::col_marginal() const {
  std::vector<double> m(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m[j] += (*this)(i, j);
  }
  return m;
}

double CountMatrix::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

void CountMatrix::validate() const {
  if (dim == 0 || counts.size() != dim * dim) {
    throw ShapeError("count matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  for (double c : counts) {
    if (!std::isfinite(c) || c < 0.0) throw ValidationError("counts must be finite and >= 0");
  }
  auto check_positions = [this](const std::optional<std::vector<double>>& p) {
    if (p && p->size() != dim) throw ShapeError("need one detector position per row/column");
  };
  check_positions(row_positions_um);
  check_positions(col_positions_um);
}

double EstimateWithError::std_of_mean() const {
  return n_samples > 0 ? std / std::sqrt(static_cast<double>(n_samples)) : 0.0;
}

}  // namespace qutrit
