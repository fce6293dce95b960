#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qutrit {

using Complex = std::complex<double>;

inline constexpr std::size_t kQutritDim = 3;
inline constexpr double kStateNormTol = 1e-12;
inline constexpr double kBasisTol = 1e-12;
inline constexpr double kDistributionTol = 1e-9;

/// Pure bipartite state sum_i c_i |i>|i> given by its real, nonnegative
/// Schmidt coefficients. Coefficients keep their input order.
class SchmidtState {
 public:
  /// Throws NegativeCoefficient, NormalizationError, DimensionError (d < 2).
  /// The coefficients are never renormalized.
  explicit SchmidtState(std::vector<double> coeffs);

  static SchmidtState maximally_entangled(std::size_t dim = kQutritDim);

  std::size_t dim() const noexcept { return coeffs_.size(); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_.at(i); }

  bool operator==(const SchmidtState&) const = default;

 private:
  std::vector<double> coeffs_;
};

/// Qutrit state (c0, c1, sqrt(1 - c0^2 - c1^2)). Throws DomainError when
/// c0^2 + c1^2 > 1 or either input is negative.
SchmidtState state_from_two_coeffs(double c0, double c1);

enum class BasisLabel { Computational, GeneralizedSigmaX, ConjugateSigmaX, Custom };

std::string to_string(BasisLabel label);

/// Orthonormal measurement basis; vectors()[k][n] is <n|b_k>.
class Basis {
 public:
  /// Validates that `vectors` is square and orthonormal within kBasisTol.
  Basis(std::vector<std::vector<Complex>> vectors, BasisLabel label = BasisLabel::Custom);

  std::size_t dim() const noexcept { return vectors_.size(); }
  BasisLabel label() const noexcept { return label_; }
  const std::vector<std::vector<Complex>>& vectors() const noexcept { return vectors_; }
  std::span<const Complex> vector(std::size_t k) const { return vectors_.at(k); }

  /// Largest deviation of the Gram matrix from the identity.
  double orthonormality_error() const;

 private:
  std::vector<std::vector<Complex>> vectors_;
  BasisLabel label_;
};

Basis computational_basis(std::size_t dim = kQutritDim);

/// |b_k> = (|0> + w^k |1> + w^{2k} |2>)/sqrt(3) with w = exp(2 pi i / 3).
Basis generalized_sigma_x_basis();

/// Entrywise complex conjugate of every basis vector.
Basis conjugate_basis(const Basis& basis);

/// Eigenvalues (0, 1, -1) in basis order, used for both measurement planes.
std::vector<double> standard_eigenvalues();

class Observable {
 public:
  /// Throws DimensionError when the eigenvalue count differs from the basis dimension.
  Observable(Basis basis, std::vector<double> eigenvalues);

  const Basis& basis() const noexcept { return basis_; }
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }

 private:
  Basis basis_;
  std::vector<double> eigenvalues_;
};

/// d x d joint outcome probabilities, row = party A outcome, column = party B.
class JointDistribution {
 public:
  /// `probs` is row-major with dim*dim entries; entries must be >= 0 and sum
  /// to 1 within kDistributionTol.
  JointDistribution(std::size_t dim, std::vector<double> probs, std::string row_label = "A",
                    std::string col_label = "B");

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t row, std::size_t col) const { return probs_[row * dim_ + col]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::string& row_label() const noexcept { return row_label_; }
  const std::string& col_label() const noexcept { return col_label_; }

  std::vector<double> row_marginal() const;
  std::vector<double> col_marginal() const;

 private:
  std::size_t dim_;
  std::vector<double> probs_;
  std::string row_label_;
  std::string col_label_;
};

/// Coincidence counts, row = signal-arm position, column = idler-arm position.
/// Cells are nonnegative finite weights; simulated data holds integers, while
/// lab matrices may arrive already scaled.
struct CountMatrix {
  std::size_t dim = kQutritDim;
  std::vector<double> counts;             // row-major, dim*dim
  double accumulation_time_s = 0.0;       // per cell; 0 when unknown
  std::optional<std::vector<double>> row_positions_um;
  std::optional<std::vector<double>> col_positions_um;

  double at(std::size_t row, std::size_t col) const { return counts.at(row * dim + col); }
  double total() const;

  /// Throws ShapeError / ValidationError on a malformed matrix.
  void validate() const;

  bool operator==(const CountMatrix&) const = default;
};

/// Mean and spread of a statistic over repeated acquisitions.
struct EstimateWithError {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 when n_samples == 1
  std::size_t n_samples = 1;

  double std_of_mean() const;
};

}  // namespace qutrit
