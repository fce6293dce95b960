#include "qutrit/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include <boost/math/tools/minima.hpp>

#include "qutrit/errors.hpp"

namespace qutrit {

namespace {

const double kLog2Of3 = std::log2(3.0);
constexpr double kDomainSlack = 1e-9;

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

double negativity_of(double c0, double c1, double c2) { return c0 * c1 + c1 * c2 + c0 * c2; }

double eof_of(double c0, double c1, double c2) {
  return entropy_term(c0 * c0) + entropy_term(c1 * c1) + entropy_term(c2 * c2);
}

void check_step(double step) {
  if (!(step > 0.0) || step > 0.01) throw DomainError("grid step must lie in (0, 0.01]");
}

}  // namespace

double negativity(const SchmidtState& state) {
  if (state.dim() != kQutritDim) {
    throw DimensionError("negativity closed form is defined for qutrits only");
  }
  return negativity_of(state[0], state[1], state[2]);
}

double eof(const SchmidtState& state) {
  double e = 0.0;
  for (double c : state.coeffs()) e += entropy_term(c * c);
  return e;
}

double negativity_from_pcc(double pcc_magnitude) {
  if (!(pcc_magnitude >= 0.0) || pcc_magnitude > 1.0 + kDomainSlack) {
    throw DomainError("|PCC| must lie in [0, 1], got " + std::to_string(pcc_magnitude));
  }
  return std::min(pcc_magnitude, 1.0);
}

double negativity_from_mp(double mp) {
  if (!(mp >= 1.0 / 3.0 - kDomainSlack) || mp > 1.0 + kDomainSlack) {
    throw DomainError("mutual predictability " + std::to_string(mp) +
                      " is outside [1/3, 1]; inconsistent with a pure Schmidt state");
  }
  return std::clamp((3.0 * mp - 1.0) / 2.0, 0.0, 1.0);
}

DeviationReport deviation_from_measures(double e, double n) {
  DeviationReport r;
  r.e = e;
  r.n = n;
  r.q_e = (kLog2Of3 - e) / kLog2Of3 * 100.0;
  r.q_n = (1.0 - n) * 100.0;
  r.delta_q = std::abs(r.q_e - r.q_n);
  return r;
}

DeviationReport deviation_report(const SchmidtState& state) {
  return deviation_from_measures(eof(state), negativity(state));
}

double delta_q(double c0, double c1) {
  const double c2 = std::sqrt(std::max(0.0, 1.0 - c0 * c0 - c1 * c1));
  return deviation_from_measures(eof_of(c0, c1, c2), negativity_of(c0, c1, c2)).delta_q;
}

MeasureGradient measure_gradients(const SchmidtState& state) {
  if (state.dim() != kQutritDim) throw DimensionError("gradients are defined for qutrits only");
  const double c0 = state[0], c1 = state[1], c2 = state[2];
  if (c0 <= 0.0 || c1 <= 0.0 || c2 <= 0.0) {
    throw BoundaryError("gradients are singular when a Schmidt coefficient vanishes");
  }
  const double c2_sq = 1.0 - c0 * c0 - c1 * c1;
  MeasureGradient g;
  g.d_e_dc0 = 2.0 * c0 * std::log2(c2_sq / (c0 * c0));
  g.d_e_dc1 = 2.0 * c1 * std::log2(c2_sq / (c1 * c1));
  g.d_n_dc0 = c1 + (1.0 - c0 * c1 - c1 * c1 - 2.0 * c0 * c0) / c2;
  g.d_n_dc1 = c0 + (1.0 - c0 * c1 - c0 * c0 - 2.0 * c1 * c1) / c2;
  return g;
}

std::vector<NonmonotonicPair> find_nonmonotonic_pairs(std::span<const SchmidtState> candidates) {
  struct Measured {
    double e, n;
  };
  std::vector<Measured> m;
  m.reserve(candidates.size());
  for (const auto& s : candidates) m.push_back({eof(s), negativity(s)});

  std::vector<NonmonotonicPair> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if ((m[i].e - m[j].e) * (m[i].n - m[j].n) < -kDomainSlack) {
        out.push_back({candidates[i], candidates[j], m[i].e, m[i].n, m[j].e, m[j].n});
      }
    }
  }
  return out;
}

void visit_delta_q_grid(double step, const std::function<void(const ScanRow&)>& visit) {
  check_step(step);
  const auto n = static_cast<std::size_t>(std::ceil(1.0 / step));
  for (std::size_t i = 1; i <= n; ++i) {
    const double c0 = static_cast<double>(i) * step;
    for (std::size_t j = 1; j <= n; ++j) {
      const double c1 = static_cast<double>(j) * step;
      const double rest = 1.0 - (c0 * c0 + c1 * c1);
      if (!(rest > 0.0)) break;
      const double c2 = std::sqrt(rest);
      visit({c0, c1, deviation_from_measures(eof_of(c0, c1, c2), negativity_of(c0, c1, c2))});
    }
  }
}

DeltaQMaximum scan_max_delta_q(double grid_step) {
  check_step(grid_step);
  // Index 0 and n + 1 pad the grid so every point has 8 neighbours; points
  // outside the open domain stay NaN and disqualify their neighbours.
  const auto n = static_cast<std::size_t>(std::ceil(1.0 / grid_step));
  const std::size_t w = n + 2;
  std::vector<double> grid(w * w, std::numeric_limits<double>::quiet_NaN());
  DeltaQMaximum result;
  visit_delta_q_grid(grid_step, [&](const ScanRow& row) {
    const auto i = static_cast<std::size_t>(std::llround(row.c0 / grid_step));
    const auto j = static_cast<std::size_t>(std::llround(row.c1 / grid_step));
    grid[i * w + j] = row.report.delta_q;
    if (row.report.delta_q > result.grid_sup_delta_q) {
      result.grid_sup_delta_q = row.report.delta_q;
      result.grid_sup_c0 = row.c0;
      result.grid_sup_c1 = row.c1;
    }
  });

  // Largest interior local maximum; ties go to the lexicographically
  // smallest (c0, c1).
  double best = -1.0;
  std::size_t best_i = 0, best_j = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const double v = grid[i * w + j];
      if (std::isnan(v) || v <= best) continue;
      bool is_peak = true;
      for (int di = -1; di <= 1 && is_peak; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const double u = grid[(i + di) * w + (j + dj)];
          if (std::isnan(u) || u > v) {
            is_peak = false;
            break;
          }
        }
      }
      if (is_peak) {
        best = v;
        best_i = i;
        best_j = j;
      }
    }
  }
  if (best < 0.0) {
    // No interior peak at this resolution; report the grid supremum.
    result.c0 = result.grid_sup_c0;
    result.c1 = result.grid_sup_c1;
    result.delta_q = result.grid_sup_delta_q;
    return result;
  }

  // Both measures are permutation invariant, so move the peak to the
  // ordering where (c0, c1) are the two smallest coefficients.
  double c[3] = {static_cast<double>(best_i) * grid_step, static_cast<double>(best_j) * grid_step,
                 0.0};
  c[2] = std::sqrt(1.0 - c[0] * c[0] - c[1] * c[1]);
  std::sort(std::begin(c), std::end(c));
  result.c0 = c[0];
  result.c1 = c[1];
  result.delta_q = best;

  if (std::abs(c[0] - c[1]) <= 2.0 * grid_step) {
    const double t0 = 0.5 * (c[0] + c[1]);
    const double lo = std::max(t0 - 2.0 * grid_step, grid_step / 2.0);
    const double hi = std::min(t0 + 2.0 * grid_step, std::numbers::sqrt2 / 2.0 - grid_step / 2.0);
    auto neg = [](double t) { return -delta_q(t, t); };
    const auto [t, f] = boost::math::tools::brent_find_minima(neg, lo, hi, 40);
    if (-f >= best) {
      result.c0 = result.c1 = t;
      result.delta_q = -f;
    }
  }
  return result;
}

}  // namespace qutrit
