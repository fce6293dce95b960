// qutrit: certify and quantify bipartite qutrit entanglement from
// coincidence-count matrices, simulate acquisitions, and tabulate measures.
//
// Exit codes: 0 success, 2 parse/shape error, 3 domain/validation error,
// 4 degenerate statistics.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qutrit/commands.hpp"
#include "qutrit/errors.hpp"

namespace fs = std::filesystem;
using namespace qutrit;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitDegenerate = 4;

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError(std::string(what) + ": '" + item + "' is not a number");
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out_path, text);
  }
}

ToolConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return parse_tool_config(read_text_file(path));
}

SchmidtState state_from_flags(double c0, double c1) { return state_from_two_coeffs(c0, c1); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation-based entanglement analysis for spatial-bin qutrits"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string out_path;
  std::string geometry_file;
  std::string eigs_text = "0,1,-1";

  // analyze / certify
  std::vector<std::string> image_files, focal_files;
  auto add_matrix_inputs = [&](CLI::App* sub) {
    sub->add_option("--image", image_files, "image-plane (sigma_z) count CSVs")->required();
    sub->add_option("--focal", focal_files, "focal-plane (sigma_x) count CSVs")->required();
    sub->add_option("--eigs", eigs_text, "eigenvalues in position order")->capture_default_str();
    sub->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--out", out_path, "output file (default stdout)");
  };
  auto* analyze = app.add_subcommand("analyze", "estimate N and EOF from measured matrices");
  add_matrix_inputs(analyze);
  auto* certify = app.add_subcommand("certify", "test |C1| + |C2| > 1");
  add_matrix_inputs(certify);

  // simulate / profile share the state flags
  double c0 = 1.0 / std::sqrt(3.0), c1 = 1.0 / std::sqrt(3.0);
  std::optional<double> total, background;
  std::optional<std::size_t> repeats;
  std::optional<std::uint64_t> seed;
  auto* simulate = app.add_subcommand("simulate", "write simulated count matrices");
  simulate->add_option("--c0", c0)->required();
  simulate->add_option("--c1", c1)->required();
  simulate->add_option("--total", total, "mean coincidences per matrix");
  simulate->add_option("--repeats", repeats, "matrices per plane");
  simulate->add_option("--seed", seed);
  simulate->add_option("--background", background, "uniform accidental fraction");
  simulate->add_option("--geometry,--config", geometry_file, "JSON config file");
  simulate->add_option("--out", out_path, "output directory")->required();

  double step = 0.001;
  std::vector<std::string> at_pairs;
  auto* scan = app.add_subcommand("scan", "tabulate E, N and deviations over (c0, c1)");
  scan->add_option("--step", step, "grid step in (0, 0.01]")->capture_default_str();
  scan->add_option("--at", at_pairs, "only these c0,c1 pairs (repeatable)");
  scan->add_option("--out", out_path, "output CSV (default stdout)");
  scan->add_option("--format", format)->check(CLI::IsMember({"csv"}));

  std::string plane = "focal";
  std::string range_text;
  std::optional<double> profile_step;
  double sigma = 5.0;
  auto* profile = app.add_subcommand("profile", "sample image- or focal-plane profiles");
  profile->add_option("--c0", c0)->capture_default_str();
  profile->add_option("--c1", c1)->capture_default_str();
  profile->add_option("--plane", plane)->check(CLI::IsMember({"image", "focal"}))->capture_default_str();
  profile->add_option("--range", range_text, "x_min,x_max in um");
  profile->add_option("--step", profile_step, "sample spacing in um (image 10, focal 30)");
  profile->add_option("--sigma", sigma, "image-plane detector blur in um")->capture_default_str();
  profile->add_option("--geometry,--config", geometry_file, "JSON config file");
  profile->add_option("--out", out_path, "output CSV (default stdout)");
  profile->add_option("--format", format)->check(CLI::IsMember({"csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (analyze->parsed() || certify->parsed()) {
      AnalysisOptions options;
      options.eigenvalues = parse_list(eigs_text, "--eigs");
      const std::vector<fs::path> image(image_files.begin(), image_files.end());
      const std::vector<fs::path> focal(focal_files.begin(), focal_files.end());
      if (analyze->parsed()) {
        const auto report = cmd_analyze(image, focal, options);
        emit(format == "table" ? report_to_table(report) : report_to_json(report), out_path);
      } else {
        const auto result = cmd_certify(image, focal, options);
        std::ostringstream os;
        if (format == "table") {
          os << std::fixed << std::setprecision(4) << "|C1| + |C2| = " << result.pcc_sum
             << "  threshold " << result.threshold << "  -> "
             << (result.certified ? "entangled (certified)" : "not certified") << '\n';
        } else {
          os << "{\n  \"pcc_sum\": " << format_double(result.pcc_sum)
             << ",\n  \"threshold\": " << format_double(result.threshold)
             << ",\n  \"certified\": " << (result.certified ? "true" : "false") << "\n}\n";
        }
        emit(os.str(), out_path);
      }
    } else if (simulate->parsed()) {
      auto cfg = load_config(geometry_file).simulation;
      if (total) cfg.total_coincidences = *total;
      if (repeats) cfg.n_repeats = *repeats;
      if (seed) cfg.seed = *seed;
      if (background) cfg.background_rate = *background;
      const auto out = cmd_simulate(state_from_flags(c0, c1), cfg, out_path);
      std::cout << "wrote " << out.image_files.size() + out.focal_files.size()
                << " matrices and " << out.manifest.string() << '\n';
    } else if (scan->parsed()) {
      std::ostringstream os;
      if (at_pairs.empty()) {
        const auto best = cmd_scan(step, os);
        std::cerr << "interior maximum: delta_Q = " << best.delta_q << " % at c0 = " << best.c0
                  << ", c1 = " << best.c1 << '\n';
      } else {
        std::vector<std::pair<double, double>> pairs;
        for (const auto& p : at_pairs) {
          const auto xs = parse_list(p, "--at");
          if (xs.size() != 2) throw ParseError("--at expects c0,c1");
          pairs.emplace_back(xs[0], xs[1]);
        }
        write_deviation_rows(pairs, os);
      }
      emit(os.str(), out_path);
    } else if (profile->parsed()) {
      const auto geom = load_config(geometry_file).geometry;
      ProfileRequest req;
      req.plane = plane == "image" ? Plane::Image : Plane::Focal;
      req.step_um = profile_step.value_or(req.plane == Plane::Image ? 10.0 : 30.0);
      req.detector_sigma_um = sigma;
      if (req.plane == Plane::Image) {
        req.x_min_um = -100.0;
        req.x_max_um = 300.0;
      }
      if (!range_text.empty()) {
        const auto r = parse_list(range_text, "--range");
        if (r.size() != 2) throw ParseError("--range expects x_min,x_max");
        req.x_min_um = r[0];
        req.x_max_um = r[1];
      }
      emit(cmd_profile(state_from_flags(c0, c1), geom, req), out_path);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Parse: return kExitParse;
      case ErrorKind::Domain: return kExitDomain;
      case ErrorKind::Degenerate: return kExitDegenerate;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return 0;
}
