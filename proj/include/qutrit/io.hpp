#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qutrit/core.hpp"
#include "qutrit/entanglement.hpp"
#include "qutrit/estimators.hpp"
#include "qutrit/optics.hpp"
#include "qutrit/photon_sim.hpp"

namespace qutrit {

// Count-matrix CSV: `dim` rows of `dim` comma-separated nonnegative numbers,
// row = signal-arm position, column = idler-arm position. Lines starting with
// '#' are comments; three of them carry metadata when present:
//   # accumulation_time_s: 90
//   # row_positions_um: 0,202.5,405
//   # col_positions_um: 0,202.5,405

/// Throws ParseError on malformed numbers, ShapeError on a non dim x dim table.
CountMatrix parse_count_matrix_csv(std::string_view text, std::size_t dim = kQutritDim);
CountMatrix read_count_matrix(const std::filesystem::path& path);

/// Shortest round-trip number formatting, so parsing reproduces the matrix exactly.
std::string format_count_matrix_csv(const CountMatrix& m);

/// "position_um,value" CSV preceded by '#' comment lines.
std::string format_profile_csv(const Profile& profile, const std::vector<std::string>& comments);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_text_file(const std::filesystem::path& path);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

/// Result of analyzing measured image-plane and focal-plane matrices.
struct AnalysisReport {
  EstimateWithError n_from_pcc;
  EstimateWithError n_from_mp;
  EstimateWithError eof_from_mi;
  EstimateWithError pcc_image;
  EstimateWithError pcc_focal;
  EstimateWithError mp;
  EstimateWithError mi;
  CertificationResult certification;
  DeviationReport deviations;
  std::vector<std::string> image_inputs;
  std::vector<std::string> focal_inputs;
  std::string config_hash;
};

std::string report_to_json(const AnalysisReport& report);
/// Requires every field; rejects unknown fields at any level (ParseError).
AnalysisReport report_from_json(std::string_view text);
/// Human-readable table with 4-decimal numbers.
std::string report_to_table(const AnalysisReport& report);

/// Defaults loaded from a JSON file of the form
///   {"geometry": {...OpticsGeometry fields...}, "simulation": {...SimConfig fields...}}
/// Both sections are optional; unknown keys are rejected.
struct ToolConfig {
  OpticsGeometry geometry;
  SimConfig simulation;
};

ToolConfig parse_tool_config(std::string_view json_text);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace qutrit
