#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qutrit/core.hpp"

namespace qutrit {

/// Percentage deviations of EOF and Negativity from their maximal values
/// (log2 3 and 1), and their absolute difference.
struct DeviationReport {
  double e = 0.0;       // entanglement of formation, bits
  double n = 0.0;       // negativity
  double q_e = 0.0;     // percent
  double q_n = 0.0;     // percent
  double delta_q = 0.0; // percent
};

/// Partial derivatives of EOF and Negativity with respect to c0 and c1,
/// with c2 = sqrt(1 - c0^2 - c1^2) held dependent.
struct MeasureGradient {
  double d_e_dc0 = 0.0;
  double d_e_dc1 = 0.0;
  double d_n_dc0 = 0.0;
  double d_n_dc1 = 0.0;
};

/// Negativity normalized to 1 for the maximally entangled qutrit state:
/// (||rho^T_B||_1 - 1)/2 = c0 c1 + c1 c2 + c0 c2. Qutrits only.
double negativity(const SchmidtState& state);

/// Entanglement of formation of a pure state, -sum c_i^2 log2 c_i^2, in bits.
double eof(const SchmidtState& state);

/// N = |C| for the sigma_x correlation; DomainError outside [0, 1 + 1e-9].
double negativity_from_pcc(double pcc_magnitude);

/// Inverts MP = (1 + 2N)/3; DomainError outside [1/3 - 1e-9, 1 + 1e-9].
double negativity_from_mp(double mp);

DeviationReport deviation_report(const SchmidtState& state);

/// Deviation report for measured (possibly inconsistent) EOF and N values.
DeviationReport deviation_from_measures(double e, double n);

/// Closed-form gradients. BoundaryError when any of c0, c1, c2 is zero.
MeasureGradient measure_gradients(const SchmidtState& state);

struct NonmonotonicPair {
  SchmidtState first;
  SchmidtState second;
  double e_first, n_first;
  double e_second, n_second;
};

/// Every pair whose EOF ordering is opposite to its Negativity ordering,
/// i.e. (E_s - E_t)(N_s - N_t) < -1e-9.
std::vector<NonmonotonicPair> find_nonmonotonic_pairs(std::span<const SchmidtState> candidates);

/// One (c0, c1) point of the deviation grid.
struct ScanRow {
  double c0, c1;
  DeviationReport report;
};

/// Visits the grid c0 = i*step, c1 = j*step (i, j >= 1) with c0^2 + c1^2 < 1,
/// in row-major order. DomainError unless 0 < step <= 0.01.
void visit_delta_q_grid(double step, const std::function<void(const ScanRow&)>& visit);

struct DeltaQMaximum {
  // Largest interior local maximum of the deviation difference, refined.
  double c0 = 0.0;
  double c1 = 0.0;
  double delta_q = 0.0;
  // Largest grid value overall. The supremum sits on the boundary c1 -> 0
  // (c0 = c2 = 1/sqrt 2) and is not attained in the open domain.
  double grid_sup_c0 = 0.0;
  double grid_sup_c1 = 0.0;
  double grid_sup_delta_q = 0.0;
};

/// Grid search for interior local maxima followed by golden-section
/// refinement along c0 = c1. DomainError unless 0 < step <= 0.01.
DeltaQMaximum scan_max_delta_q(double grid_step);

/// Difference of percentage deviations at (c0, c1, sqrt(1 - c0^2 - c1^2)).
double delta_q(double c0, double c1);

}  // namespace qutrit
