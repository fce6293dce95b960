#include "qutrit/measurement.hpp"

#include <algorithm>
#include <array>

#include "qutrit/errors.hpp"

namespace qutrit {

namespace {

void require_qutrit(const SchmidtState& state) {
  if (state.dim() != kQutritDim) {
    throw DimensionError("closed-form sigma_x distributions need d = 3, got " +
                         std::to_string(state.dim()));
  }
}

double pair_sum(const SchmidtState& s) { return s[0] * s[1] + s[1] * s[2] + s[0] * s[2]; }

// Fills the 3x3 table given which column is correlated with each row.
JointDistribution sigma_x_table(const SchmidtState& state, const std::array<std::size_t, 3>& partner,
                                std::string col_label) {
  require_qutrit(state);
  const double s = pair_sum(state);
  const double hi = (1.0 + 2.0 * s) / 9.0;
  // s <= 1 exactly; rounding at the balanced state can overshoot by an ulp.
  const double lo = std::max(0.0, (1.0 - s) / 9.0);
  std::vector<double> probs(9, lo);
  for (std::size_t i = 0; i < 3; ++i) probs[i * 3 + partner[i]] = hi;
  return JointDistribution(3, std::move(probs), "sigma_x", std::move(col_label));
}

}  // namespace

JointDistribution joint_computational(const SchmidtState& state) {
  const std::size_t d = state.dim();
  std::vector<double> probs(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) probs[i * d + i] = state[i] * state[i];
  return JointDistribution(d, std::move(probs), "computational", "computational");
}

JointDistribution joint_sigma_x_both(const SchmidtState& state) {
  return sigma_x_table(state, {0, 2, 1}, "sigma_x");
}

JointDistribution joint_sigma_x_conjugate(const SchmidtState& state) {
  return sigma_x_table(state, {0, 1, 2}, "sigma_x_conjugate");
}

JointDistribution joint_general(const SchmidtState& state, const Basis& basis_a,
                                const Basis& basis_b) {
  const std::size_t d = state.dim();
  if (basis_a.dim() != d || basis_b.dim() != d) {
    throw DimensionError("basis dimension does not match state dimension");
  }
  std::vector<double> probs(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto a = basis_a.vector(i);
    for (std::size_t j = 0; j < d; ++j) {
      const auto b = basis_b.vector(j);
      Complex amp{};
      for (std::size_t k = 0; k < d; ++k) amp += state[k] * std::conj(a[k]) * std::conj(b[k]);
      probs[i * d + j] = std::norm(amp);
    }
  }
  return JointDistribution(d, std::move(probs), to_string(basis_a.label()),
                           to_string(basis_b.label()));
}

}  // namespace qutrit
