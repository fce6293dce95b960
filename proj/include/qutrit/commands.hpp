#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "qutrit/io.hpp"

namespace qutrit {

// Library side of the command-line workflows. The CLI only parses flags and
// maps exceptions to exit codes.

struct AnalysisOptions {
  std::vector<double> eigenvalues = standard_eigenvalues();
};

/// Analyzes in-memory matrices; `image_names` / `focal_names` go to provenance.
AnalysisReport analyze_matrices(std::span<const CountMatrix> image, std::span<const CountMatrix> focal,
                                const AnalysisOptions& options,
                                std::vector<std::string> image_names = {},
                                std::vector<std::string> focal_names = {});

AnalysisReport cmd_analyze(const std::vector<std::filesystem::path>& image_csv,
                           const std::vector<std::filesystem::path>& focal_csv,
                           const AnalysisOptions& options = {});

CertificationResult cmd_certify(const std::vector<std::filesystem::path>& image_csv,
                                const std::vector<std::filesystem::path>& focal_csv,
                                const AnalysisOptions& options = {});

struct SimulationOutput {
  std::vector<std::filesystem::path> image_files;
  std::vector<std::filesystem::path> focal_files;
  std::filesystem::path manifest;
};

/// Writes image_NN.csv / focal_NN.csv per repeat plus manifest.json into
/// `out_dir` (created if needed).
SimulationOutput cmd_simulate(const SchmidtState& state, const SimConfig& cfg,
                              const std::filesystem::path& out_dir);

/// Streams the scan CSV (c0,c1,E,N,Q_E,Q_N,delta_Q) and returns the located
/// maximum, which is also appended as '#' comment lines.
DeltaQMaximum cmd_scan(double step, std::ostream& csv);

/// Same columns for explicit coefficient pairs.
void write_deviation_rows(std::span<const std::pair<double, double>> pairs, std::ostream& csv);

enum class Plane { Image, Focal };

struct ProfileRequest {
  Plane plane = Plane::Focal;
  double x_min_um = -2000.0;
  double x_max_um = 2000.0;
  double step_um = 30.0;           // 10 um is the image-plane default
  double detector_sigma_um = 5.0;  // image plane only
};

/// Profile CSV with eigen-position annotations as comment lines.
std::string cmd_profile(const SchmidtState& state, const OpticsGeometry& geom,
                        const ProfileRequest& request);

}  // namespace qutrit
