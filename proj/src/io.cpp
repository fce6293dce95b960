#include "qutrit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qutrit/errors.hpp"

namespace qutrit {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + std::string(field) +
                     "' is not a number");
  }
  return v;
}

std::vector<double> parse_number_list(std::string_view text, std::size_t line_no) {
  std::vector<double> out;
  for (auto f : split(text, ',')) out.push_back(parse_number(f, line_no));
  return out;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += format_double(xs[i]);
  }
  return s;
}

// --- JSON helpers that refuse unknown or missing keys ---

void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& where,
                 bool all_required) {
  if (!j.is_object()) throw ParseError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ParseError("unknown field '" + key + "' in " + where);
  }
  if (all_required) {
    for (const auto& key : allowed) {
      if (!j.contains(key)) throw ParseError("missing field '" + key + "' in " + where);
    }
  }
}

json estimate_json(const EstimateWithError& e) {
  return {{"mean", e.mean}, {"std", e.std}, {"n_samples", e.n_samples}};
}

EstimateWithError estimate_from(const json& j, const std::string& where) {
  expect_keys(j, {"mean", "std", "n_samples"}, where, true);
  EstimateWithError e;
  e.mean = j.at("mean").get<double>();
  e.std = j.at("std").get<double>();
  e.n_samples = j.at("n_samples").get<std::size_t>();
  return e;
}

template <typename T>
void read_optional(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

CountMatrix parse_count_matrix_csv(std::string_view text, std::size_t dim) {
  CountMatrix m;
  m.dim = dim;
  std::size_t rows = 0, line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    const auto line = trim(text.substr(start, pos - start));
    start = pos + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const auto key = trim(body.substr(0, colon));
      const auto value = trim(body.substr(colon + 1));
      if (key == "accumulation_time_s") {
        m.accumulation_time_s = parse_number(value, line_no);
      } else if (key == "row_positions_um") {
        m.row_positions_um = parse_number_list(value, line_no);
      } else if (key == "col_positions_um") {
        m.col_positions_um = parse_number_list(value, line_no);
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != dim) {
      throw ShapeError("line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                       " columns, expected " + std::to_string(dim));
    }
    for (auto f : fields) {
      const double v = parse_number(f, line_no);
      if (v < 0.0) throw ParseError("line " + std::to_string(line_no) + ": negative count");
      m.counts.push_back(v);
    }
    ++rows;
  }
  if (rows != dim) {
    throw ShapeError("found " + std::to_string(rows) + " data rows, expected " + std::to_string(dim));
  }
  m.validate();
  return m;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CountMatrix read_count_matrix(const std::filesystem::path& path) {
  try {
    return parse_count_matrix_csv(read_text_file(path));
  } catch (const Error& e) {
    // Re-throw with the file name attached, keeping the error class.
    const std::string msg = path.string() + ": " + e.what();
    if (dynamic_cast<const ShapeError*>(&e)) throw ShapeError(msg);
    if (dynamic_cast<const ParseError*>(&e)) throw ParseError(msg);
    throw;
  }
}

std::string format_count_matrix_csv(const CountMatrix& m) {
  m.validate();
  std::string out;
  if (m.accumulation_time_s != 0.0) out += "# accumulation_time_s: " + format_double(m.accumulation_time_s) + "\n";
  if (m.row_positions_um) out += "# row_positions_um: " + join_numbers(*m.row_positions_um) + "\n";
  if (m.col_positions_um) out += "# col_positions_um: " + join_numbers(*m.col_positions_um) + "\n";
  for (std::size_t i = 0; i < m.dim; ++i) {
    for (std::size_t j = 0; j < m.dim; ++j) {
      if (j) out += ',';
      out += format_double(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_profile_csv(const Profile& profile, const std::vector<std::string>& comments) {
  profile.validate();
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += "position_um,value\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out += format_double(profile.positions_um[i]) + "," + format_double(profile.values[i]) + "\n";
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ValidationError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string report_to_json(const AnalysisReport& r) {
  json j;
  j["n_from_pcc"] = estimate_json(r.n_from_pcc);
  j["n_from_mp"] = estimate_json(r.n_from_mp);
  j["eof_from_mi"] = estimate_json(r.eof_from_mi);
  j["correlators"] = {{"pcc_image", estimate_json(r.pcc_image)},
                      {"pcc_focal", estimate_json(r.pcc_focal)},
                      {"mp", estimate_json(r.mp)},
                      {"mi", estimate_json(r.mi)}};
  j["certification"] = {{"pcc_sum", r.certification.pcc_sum},
                        {"certified", r.certification.certified},
                        {"threshold", r.certification.threshold}};
  j["deviations"] = {{"e", r.deviations.e},
                     {"n", r.deviations.n},
                     {"q_e", r.deviations.q_e},
                     {"q_n", r.deviations.q_n},
                     {"delta_q", r.deviations.delta_q}};
  j["provenance"] = {{"image_inputs", r.image_inputs},
                     {"focal_inputs", r.focal_inputs},
                     {"config_hash", r.config_hash}};
  return j.dump(2) + "\n";
}

AnalysisReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what());
  }
  try {
    expect_keys(j,
                {"n_from_pcc", "n_from_mp", "eof_from_mi", "correlators", "certification",
                 "deviations", "provenance"},
                "report", true);
    AnalysisReport r;
    r.n_from_pcc = estimate_from(j.at("n_from_pcc"), "n_from_pcc");
    r.n_from_mp = estimate_from(j.at("n_from_mp"), "n_from_mp");
    r.eof_from_mi = estimate_from(j.at("eof_from_mi"), "eof_from_mi");

    const auto& c = j.at("correlators");
    expect_keys(c, {"pcc_image", "pcc_focal", "mp", "mi"}, "correlators", true);
    r.pcc_image = estimate_from(c.at("pcc_image"), "pcc_image");
    r.pcc_focal = estimate_from(c.at("pcc_focal"), "pcc_focal");
    r.mp = estimate_from(c.at("mp"), "mp");
    r.mi = estimate_from(c.at("mi"), "mi");

    const auto& cert = j.at("certification");
    expect_keys(cert, {"pcc_sum", "certified", "threshold"}, "certification", true);
    r.certification.pcc_sum = cert.at("pcc_sum").get<double>();
    r.certification.certified = cert.at("certified").get<bool>();
    r.certification.threshold = cert.at("threshold").get<double>();

    const auto& dev = j.at("deviations");
    expect_keys(dev, {"e", "n", "q_e", "q_n", "delta_q"}, "deviations", true);
    r.deviations.e = dev.at("e").get<double>();
    r.deviations.n = dev.at("n").get<double>();
    r.deviations.q_e = dev.at("q_e").get<double>();
    r.deviations.q_n = dev.at("q_n").get<double>();
    r.deviations.delta_q = dev.at("delta_q").get<double>();

    const auto& prov = j.at("provenance");
    expect_keys(prov, {"image_inputs", "focal_inputs", "config_hash"}, "provenance", true);
    r.image_inputs = prov.at("image_inputs").get<std::vector<std::string>>();
    r.focal_inputs = prov.at("focal_inputs").get<std::vector<std::string>>();
    r.config_hash = prov.at("config_hash").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what());
  }
}

std::string report_to_table(const AnalysisReport& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  auto row = [&os](const char* name, const EstimateWithError& e) {
    os << std::left << std::setw(22) << name << std::right << std::setw(10) << e.mean << " +/- "
       << std::setw(7) << e.std << "  (n=" << e.n_samples << ")\n";
  };
  row("PCC image plane", r.pcc_image);
  row("PCC focal plane", r.pcc_focal);
  row("MP (conjugate)", r.mp);
  row("MI [bits]", r.mi);
  os << '\n';
  row("N from PCC", r.n_from_pcc);
  row("N from MP", r.n_from_mp);
  row("EOF from MI [bits]", r.eof_from_mi);
  os << '\n'
     << "|C1| + |C2|           " << std::setw(10) << r.certification.pcc_sum << "  threshold "
     << r.certification.threshold << "  -> "
     << (r.certification.certified ? "entangled (certified)" : "not certified") << '\n';
  os << "Q_E [%]               " << std::setw(10) << r.deviations.q_e << '\n'
     << "Q_N [%]               " << std::setw(10) << r.deviations.q_n << '\n'
     << "Delta Q [%]           " << std::setw(10) << r.deviations.delta_q << '\n';
  return os.str();
}

ToolConfig parse_tool_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config JSON: ") + e.what());
  }
  ToolConfig cfg;
  try {
    expect_keys(j, {"geometry", "simulation"}, "config", false);
    if (j.contains("geometry")) {
      const auto& g = j.at("geometry");
      expect_keys(g,
                  {"slit_width_um", "slit_separation_um", "wavelength_um", "focal_length_mm",
                   "n_slits", "magnification"},
                  "geometry", false);
      read_optional(g, "slit_width_um", cfg.geometry.slit_width_um);
      read_optional(g, "slit_separation_um", cfg.geometry.slit_separation_um);
      read_optional(g, "wavelength_um", cfg.geometry.wavelength_um);
      read_optional(g, "focal_length_mm", cfg.geometry.focal_length_mm);
      read_optional(g, "n_slits", cfg.geometry.n_slits);
      read_optional(g, "magnification", cfg.geometry.magnification);
    }
    if (j.contains("simulation")) {
      const auto& s = j.at("simulation");
      expect_keys(s, {"total_coincidences", "n_repeats", "background_rate", "seed"}, "simulation",
                  false);
      read_optional(s, "total_coincidences", cfg.simulation.total_coincidences);
      read_optional(s, "n_repeats", cfg.simulation.n_repeats);
      read_optional(s, "background_rate", cfg.simulation.background_rate);
      read_optional(s, "seed", cfg.simulation.seed);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config JSON: ") + e.what());
  }
  cfg.geometry.validate();
  cfg.simulation.validate();
  return cfg;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qutrit
