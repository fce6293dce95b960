#pragma once

#include "qutrit/core.hpp"

namespace qutrit {

// Exact joint outcome distributions of local measurements on a Schmidt state.

/// Diagonal distribution p(i, i) = c_i^2. Any dimension.
JointDistribution joint_computational(const SchmidtState& state);

/// Generalized sigma_x measured on both sides (closed form). Cells (0,0),
/// (1,2), (2,1) carry (1 + 2S)/9 and the remaining six (1 - S)/9, where
/// S = c0 c1 + c1 c2 + c0 c2. Throws DimensionError for d != 3.
JointDistribution joint_sigma_x_both(const SchmidtState& state);

/// Generalized sigma_x on side A and its complex conjugate on side B
/// (closed form). Equals joint_sigma_x_both with columns 1 and 2 swapped.
JointDistribution joint_sigma_x_conjugate(const SchmidtState& state);

/// Born rule P(i, j) = |(<a_i| (x) <b_j|) |psi>|^2 = |sum_k c_k <a_i|k><b_j|k>|^2.
JointDistribution joint_general(const SchmidtState& state, const Basis& basis_a,
                                const Basis& basis_b);

}  // namespace qutrit
