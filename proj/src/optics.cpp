#include "qutrit/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "qutrit/errors.hpp"

namespace qutrit {

namespace {

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

void normalize_peak(Profile& p) {
  const double peak = p.values.empty() ? 0.0 : *std::max_element(p.values.begin(), p.values.end());
  if (peak > 0.0) {
    for (double& v : p.values) v /= peak;
  }
}

void check_scan(double x_min, double x_max, double step) {
  if (!(x_min < x_max)) throw ValidationError("scan range needs x_min < x_max");
  if (!(step > 0.0)) throw ValidationError("scan step must be > 0");
}

// Vertex of the parabola through (x - h, a), (x, b), (x + h, c).
double parabolic_vertex(double x, double h, double a, double b, double c) {
  const double denom = a - 2.0 * b + c;
  if (denom == 0.0) return x;
  return x + 0.5 * h * (a - c) / denom;
}

// Zero of the intensity near sample i. The signed square root of the five
// samples around i (left side negative) is smooth through the zero; a least
// squares cubic is fitted for both signs of the centre sample and the root of
// the better fit is returned.
double refine_zero(const std::vector<double>& x, const std::vector<double>& v, std::size_t i) {
  const double h = x[i + 1] - x[i];
  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::Vector4d best_coef = Eigen::Vector4d::Zero();
  for (double centre_sign : {-1.0, 1.0}) {
    Eigen::Matrix<double, 5, 4> a;
    Eigen::Matrix<double, 5, 1> b;
    for (int k = 0; k < 5; ++k) {
      const double u = (x[i + k - 2] - x[i]) / h;
      a.row(k) << 1.0, u, u * u, u * u * u;
      const double sign = k < 2 ? -1.0 : (k == 2 ? centre_sign : 1.0);
      b(k) = sign * std::sqrt(v[i + k - 2]);
    }
    const Eigen::Vector4d coef = a.colPivHouseholderQr().solve(b);
    const double residual = (a * coef - b).squaredNorm();
    if (residual < best_residual) {
      best_residual = residual;
      best_coef = coef;
    }
  }
  auto cubic = [&](double u) {
    return best_coef(0) + u * (best_coef(1) + u * (best_coef(2) + u * best_coef(3)));
  };
  if (cubic(-1.0) * cubic(1.0) > 0.0) return parabolic_vertex(x[i], h, v[i - 1], v[i], v[i + 1]);
  boost::uintmax_t iters = 60;
  const auto root = boost::math::tools::toms748_solve(
      cubic, -1.0, 1.0, boost::math::tools::eps_tolerance<double>(40), iters);
  return x[i] + h * 0.5 * (root.first + root.second);
}

double pearson_at_lag(const std::vector<double>& v, std::size_t lag) {
  const std::size_t n = v.size() - lag;
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += v[i];
    mb += v[i + lag];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = v[i] - ma, b = v[i + lag] - mb;
    sab += a * b;
    saa += a * a;
    sbb += b * b;
  }
  return (saa > 0.0 && sbb > 0.0) ? sab / std::sqrt(saa * sbb) : 0.0;
}

}  // namespace

void OpticsGeometry::validate() const {
  if (!(slit_width_um > 0.0) || !(slit_separation_um > 0.0) || !(wavelength_um > 0.0) ||
      !(focal_length_mm > 0.0) || !(magnification > 0.0)) {
    throw ValidationError("optics lengths and magnification must be > 0");
  }
  if (!(slit_separation_um > slit_width_um)) {
    throw ValidationError("slit separation must exceed slit width");
  }
  if (n_slits < 2) throw ValidationError("need at least two slits");
}

double OpticsGeometry::fringe_period_um() const {
  return wavelength_um * focal_length_um() / slit_separation_um;
}

void Profile::validate() const {
  if (positions_um.size() != values.size()) throw ValidationError("profile column lengths differ");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0)) throw ValidationError("profile values must be >= 0");
    if (i > 0 && !(positions_um[i] > positions_um[i - 1])) {
      throw ValidationError("profile positions must strictly increase");
    }
  }
}

std::vector<double> sample_positions(double x_min, double x_max, double step) {
  check_scan(x_min, x_max, step);
  const auto count = static_cast<std::size_t>(std::floor((x_max - x_min) / step + 1e-9)) + 1;
  std::vector<double> xs(count);
  for (std::size_t k = 0; k < count; ++k) xs[k] = x_min + static_cast<double>(k) * step;
  return xs;
}

double theta_of_position(double x_um, const OpticsGeometry& geom) {
  return 2.0 * std::numbers::pi * x_um * geom.slit_separation_um /
         (geom.wavelength_um * geom.focal_length_um());
}

std::array<double, 3> eigen_positions(const OpticsGeometry& geom) {
  geom.validate();
  const double period = geom.fringe_period_um();
  return {0.0, period / 3.0, 2.0 * period / 3.0};
}

double slit_envelope(double x_um, const OpticsGeometry& geom) {
  const double u = std::numbers::pi * x_um * geom.slit_width_um /
                   (geom.wavelength_um * geom.focal_length_um());
  const double s = sinc(u);
  return s * s;
}

double focal_intensity(double x_um, const SchmidtState& state, const OpticsGeometry& geom) {
  const double theta = theta_of_position(x_um, geom);
  Complex amp{};
  for (std::size_t n = 0; n < state.dim(); ++n) {
    amp += std::polar(state[n], -static_cast<double>(n) * theta);
  }
  return slit_envelope(x_um, geom) * std::norm(amp);
}

Profile focal_coincidence_profile(const SchmidtState& state, const OpticsGeometry& geom,
                                  double x_min_um, double x_max_um, double step_um) {
  geom.validate();
  if (state.dim() != geom.n_slits) throw DimensionError("state dimension must equal slit count");
  Profile p;
  p.positions_um = sample_positions(x_min_um, x_max_um, step_um);
  p.values.reserve(p.size());
  for (double x : p.positions_um) p.values.push_back(focal_intensity(x, state, geom));
  normalize_peak(p);
  return p;
}

std::array<double, 3> sigma_z_operator_positions(const OpticsGeometry& geom) {
  geom.validate();
  const double pitch = geom.slit_separation_um * geom.magnification;
  return {0.0, pitch, 2.0 * pitch};
}

Profile image_plane_profile(const SchmidtState& state, const OpticsGeometry& geom,
                            double detector_sigma_um, double x_min_um, double x_max_um,
                            double step_um) {
  geom.validate();
  if (!(detector_sigma_um >= 0.0)) throw ValidationError("detector sigma must be >= 0");
  if (state.dim() != geom.n_slits) throw DimensionError("state dimension must equal slit count");

  const double pitch = geom.slit_separation_um * geom.magnification;
  const double half_width = 0.5 * geom.slit_width_um * geom.magnification;
  // Top-hat slit image convolved with a Gaussian; sigma = 0 leaves the top hat.
  auto kernel = [&](double u) {
    if (detector_sigma_um == 0.0) return std::abs(u) <= half_width ? 1.0 : 0.0;
    const double s = std::numbers::sqrt2 * detector_sigma_um;
    return 0.5 * (std::erf((u + half_width) / s) - std::erf((u - half_width) / s));
  };

  Profile p;
  p.positions_um = sample_positions(x_min_um, x_max_um, step_um);
  p.values.reserve(p.size());
  for (double x : p.positions_um) {
    double v = 0.0;
    for (std::size_t n = 0; n < state.dim(); ++n) {
      v += state[n] * state[n] * kernel(x - static_cast<double>(n) * pitch);
    }
    p.values.push_back(v);
  }
  normalize_peak(p);
  return p;
}

Profile with_background(const Profile& profile, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw ValidationError("background fraction must lie in [0, 1)");
  Profile p = profile;
  for (double& v : p.values) v = (1.0 - fraction) * v + fraction;
  normalize_peak(p);
  return p;
}

double visibility(const Profile& profile, double fringe_period_um) {
  profile.validate();
  if (profile.size() < 3) throw InsufficientSpan("visibility needs at least 3 samples");
  const double lo = profile.positions_um.front();
  const double hi = profile.positions_um.back();
  if (hi - lo < fringe_period_um) {
    throw InsufficientSpan("scan covers " + std::to_string(hi - lo) + " um, less than one period");
  }
  const auto peak = std::max_element(profile.values.begin(), profile.values.end());
  const double x_peak = profile.positions_um[peak - profile.values.begin()];
  // Window of one period around the peak, slid inside the scanned range.
  double start = std::clamp(x_peak - 0.5 * fringe_period_um, lo, hi - fringe_period_um);
  double end = start + fringe_period_um;

  double vmax = 0.0, vmin = *peak;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double x = profile.positions_um[i];
    if (x < start || x > end) continue;
    vmax = std::max(vmax, profile.values[i]);
    vmin = std::min(vmin, profile.values[i]);
  }
  return (vmax + vmin) > 0.0 ? (vmax - vmin) / (vmax + vmin) : 0.0;
}

double estimate_fringe_period(const Profile& profile) {
  profile.validate();
  const auto& x = profile.positions_um;
  const auto& v = profile.values;
  if (v.size() < 8) throw InsufficientSpan("too few samples to estimate a period");
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);

  // Coarse: first autocorrelation peak above 0.5.
  const std::size_t max_lag = v.size() / 2;
  std::vector<double> r(max_lag + 2, 0.0);
  for (std::size_t lag = 1; lag <= max_lag + 1 && lag < v.size() - 1; ++lag) r[lag] = pearson_at_lag(v, lag);
  double coarse = 0.0;
  for (std::size_t lag = 2; lag <= max_lag; ++lag) {
    if (r[lag] > 0.5 && r[lag] >= r[lag - 1] && r[lag] > r[lag + 1]) {
      coarse = parabolic_vertex(static_cast<double>(lag), 1.0, r[lag - 1], r[lag], r[lag + 1]) * h;
      break;
    }
  }
  if (coarse <= 0.0) throw InsufficientSpan("no repeating fringe found within half the scan");

  // Fine: interpolated minima paired with the minimum about one period later.
  // Dark fringes (near-zero minima) are located as zeros, others by a parabola.
  const double peak = *std::max_element(v.begin(), v.end());
  std::vector<double> minima;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (!(v[i] < v[i - 1] && v[i] <= v[i + 1])) continue;
    if (v[i] <= 0.02 * peak && i >= 2 && i + 2 < v.size()) {
      minima.push_back(refine_zero(x, v, i));
    } else {
      minima.push_back(parabolic_vertex(x[i], h, v[i - 1], v[i], v[i + 1]));
    }
  }
  std::vector<double> spans;
  for (double m : minima) {
    const double target = m + coarse;
    const auto it = std::min_element(minima.begin(), minima.end(), [&](double a, double b) {
      return std::abs(a - target) < std::abs(b - target);
    });
    if (it != minima.end() && std::abs(*it - target) < 0.1 * coarse) spans.push_back(*it - m);
  }
  if (spans.empty()) return coarse;
  std::sort(spans.begin(), spans.end());
  const std::size_t mid = spans.size() / 2;
  return spans.size() % 2 ? spans[mid] : 0.5 * (spans[mid - 1] + spans[mid]);
}

}  // namespace qutrit
