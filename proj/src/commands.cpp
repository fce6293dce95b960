#include "qutrit/commands.hpp"

#include <cstdio>

#include "json.hpp"
#include "qutrit/errors.hpp"

namespace qutrit {

namespace {

std::vector<CountMatrix> read_all(const std::vector<std::filesystem::path>& paths) {
  std::vector<CountMatrix> out;
  for (const auto& p : paths) out.push_back(read_count_matrix(p));
  return out;
}

std::vector<std::string> names_of(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) out.push_back(p.string());
  return out;
}

std::string analysis_config_hash(const AnalysisOptions& options) {
  nlohmann::json j;
  j["eigenvalues"] = options.eigenvalues;
  nlohmann::json matching = nlohmann::json::array();
  for (const auto& [r, c] : conjugate_matching()) matching.push_back({r, c});
  j["mp_matching"] = matching;
  j["mi_plane"] = "image";
  j["n_from_pcc_plane"] = "focal";
  return fnv1a_hex(j.dump());
}

void write_deviation_row(std::ostream& os, double c0, double c1, const DeviationReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", c0, c1, r.e, r.n, r.q_e,
                r.q_n, r.delta_q);
  os << buf;
}

constexpr const char* kScanHeader = "c0,c1,E,N,Q_E,Q_N,delta_Q\n";

}  // namespace

AnalysisReport analyze_matrices(std::span<const CountMatrix> image, std::span<const CountMatrix> focal,
                                const AnalysisOptions& options, std::vector<std::string> image_names,
                                std::vector<std::string> focal_names) {
  const auto est = estimate_from_counts(image, focal, options.eigenvalues);
  AnalysisReport r;
  r.n_from_pcc = est.n_from_pcc;
  r.n_from_mp = est.n_from_mp;
  r.eof_from_mi = est.eof_from_mi;
  r.pcc_image = est.pcc_image;
  r.pcc_focal = est.pcc_focal;
  r.mp = est.mp;
  r.mi = est.mi;
  r.certification = certify_by_pcc_sum(est.pcc_image.mean, est.pcc_focal.mean);
  r.deviations = deviation_from_measures(est.eof_from_mi.mean, est.n_from_pcc.mean);
  r.image_inputs = std::move(image_names);
  r.focal_inputs = std::move(focal_names);
  r.config_hash = analysis_config_hash(options);
  return r;
}

AnalysisReport cmd_analyze(const std::vector<std::filesystem::path>& image_csv,
                           const std::vector<std::filesystem::path>& focal_csv,
                           const AnalysisOptions& options) {
  const auto image = read_all(image_csv);
  const auto focal = read_all(focal_csv);
  return analyze_matrices(image, focal, options, names_of(image_csv), names_of(focal_csv));
}

CertificationResult cmd_certify(const std::vector<std::filesystem::path>& image_csv,
                                const std::vector<std::filesystem::path>& focal_csv,
                                const AnalysisOptions& options) {
  if (image_csv.empty() || focal_csv.empty()) {
    throw ValidationError("need at least one image-plane and one focal-plane matrix");
  }
  auto mean_pcc = [&](const std::vector<std::filesystem::path>& paths) {
    std::vector<double> values;
    for (const auto& m : read_all(paths)) {
      values.push_back(pcc(normalize_counts(m), options.eigenvalues, options.eigenvalues));
    }
    return repeat_statistics(values).mean;
  };
  return certify_by_pcc_sum(mean_pcc(image_csv), mean_pcc(focal_csv));
}

SimulationOutput cmd_simulate(const SchmidtState& state, const SimConfig& cfg,
                              const std::filesystem::path& out_dir) {
  cfg.validate();
  const auto sets = simulate_sets(state, cfg);
  std::filesystem::create_directories(out_dir);

  SimulationOutput out;
  nlohmann::json manifest;
  manifest["state"] = {{"coeffs", std::vector<double>(state.coeffs().begin(), state.coeffs().end())}};
  manifest["simulation"] = {{"total_coincidences", cfg.total_coincidences},
                            {"n_repeats", cfg.n_repeats},
                            {"background_rate", cfg.background_rate},
                            {"seed", cfg.seed}};
  manifest["image"] = nlohmann::json::array();
  manifest["focal"] = nlohmann::json::array();
  for (std::size_t r = 0; r < sets.size(); ++r) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "_%02zu.csv", r + 1);
    const auto image_name = std::string("image") + suffix;
    const auto focal_name = std::string("focal") + suffix;
    write_file_atomic(out_dir / image_name,
                      "# plane: image\n# repeat: " + std::to_string(r + 1) + "\n" +
                          format_count_matrix_csv(sets[r].image));
    write_file_atomic(out_dir / focal_name,
                      "# plane: focal\n# repeat: " + std::to_string(r + 1) + "\n" +
                          format_count_matrix_csv(sets[r].focal));
    out.image_files.push_back(out_dir / image_name);
    out.focal_files.push_back(out_dir / focal_name);
    manifest["image"].push_back(image_name);
    manifest["focal"].push_back(focal_name);
  }
  out.manifest = out_dir / "manifest.json";
  write_file_atomic(out.manifest, manifest.dump(2) + "\n");
  return out;
}

DeltaQMaximum cmd_scan(double step, std::ostream& csv) {
  csv << kScanHeader;
  visit_delta_q_grid(step, [&csv](const ScanRow& row) {
    write_deviation_row(csv, row.c0, row.c1, row.report);
  });
  const auto best = scan_max_delta_q(step);
  char buf[256];
  std::snprintf(buf, sizeof buf, "# interior_max: c0=%.6f c1=%.6f delta_Q=%.6f\n", best.c0, best.c1,
                best.delta_q);
  csv << buf;
  std::snprintf(buf, sizeof buf, "# grid_sup (boundary): c0=%.6f c1=%.6f delta_Q=%.6f\n",
                best.grid_sup_c0, best.grid_sup_c1, best.grid_sup_delta_q);
  csv << buf;
  return best;
}

void write_deviation_rows(std::span<const std::pair<double, double>> pairs, std::ostream& csv) {
  csv << kScanHeader;
  for (const auto& [c0, c1] : pairs) {
    write_deviation_row(csv, c0, c1, deviation_report(state_from_two_coeffs(c0, c1)));
  }
}

std::string cmd_profile(const SchmidtState& state, const OpticsGeometry& geom,
                        const ProfileRequest& req) {
  geom.validate();
  std::vector<std::string> comments;
  Profile profile;
  if (req.plane == Plane::Focal) {
    profile = focal_coincidence_profile(state, geom, req.x_min_um, req.x_max_um, req.step_um);
    const auto eig = eigen_positions(geom);
    comments.push_back("plane: focal");
    comments.push_back("fringe_period_um: " + format_double(geom.fringe_period_um()));
    comments.push_back("eigen x1 (theta=0) um: " + format_double(eig[0]));
    comments.push_back("eigen x2 (theta=2pi/3) um: " + format_double(eig[1]));
    comments.push_back("eigen x3 (theta=4pi/3) um: " + format_double(eig[2]));
  } else {
    profile = image_plane_profile(state, geom, req.detector_sigma_um, req.x_min_um, req.x_max_um,
                                  req.step_um);
    const auto pos = sigma_z_operator_positions(geom);
    comments.push_back("plane: image");
    comments.push_back("detector_sigma_um: " + format_double(req.detector_sigma_um));
    comments.push_back("sigma_z eigenvalue +1 um: " + format_double(pos[0]));
    comments.push_back("sigma_z eigenvalue 0 um: " + format_double(pos[1]));
    comments.push_back("sigma_z eigenvalue -1 um: " + format_double(pos[2]));
  }
  return format_profile_csv(profile, comments);
}

}  // namespace qutrit
