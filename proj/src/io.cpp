#include "nmrqc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nmrqc {

namespace {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

Json label_pair(const BasisLabel& a, const BasisLabel& b) { return Json::array({a.str(), b.str()}); }

}  // namespace

SpinSystem system_from_json(const Json& doc) {
  try {
    SystemConfig config;
    config.shifts_hz = doc.at("shifts_hz").get<std::vector<double>>();
    config.j_hz = doc.at("j_hz").get<std::vector<std::vector<double>>>();
    for (const auto& role : doc.at("roles")) config.roles.push_back(parse_role(role.get<std::string>()));
    if (doc.contains("spins") && doc.at("spins").get<std::size_t>() != config.shifts_hz.size())
      throw Error("\"spins\" does not match the number of shifts");
    return SpinSystem::build(config);
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed system description: ") + e.what());
  }
}

Json system_to_json(const SpinSystem& system) {
  Json doc;
  doc["spins"] = system.size();
  std::vector<double> shifts;
  std::vector<std::vector<double>> j(system.size(), std::vector<double>(system.size()));
  Json roles = Json::array();
  for (std::size_t i = 0; i < system.size(); ++i) {
    shifts.push_back(system.shift(i));
    roles.push_back(std::string(to_string(system.role(i))));
    for (std::size_t k = 0; k < system.size(); ++k) j[i][k] = system.coupling(i, k);
  }
  doc["shifts_hz"] = shifts;
  doc["j_hz"] = j;
  doc["roles"] = roles;
  return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

SpinSystem load_system(const std::filesystem::path& path) {
  Json doc;
  try {
    doc = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
  return system_from_json(doc);
}

Json truth_table_json(const Permutation& table) {
  Json rows = Json::array();
  for (const auto& [in, out] : table.pairs()) rows.push_back(label_pair(in, out));
  return rows;
}

Json gate_json(const GateSpec& gate) {
  Json doc;
  doc["name"] = gate.name;
  doc["arity"] = gate.arity;
  doc["truth_table"] = truth_table_json(gate.truth_table);
  Json recipe = Json::array();
  for (const auto& ev : gate.recipe) recipe.push_back(serialize_event(ev));
  doc["recipe"] = recipe;
  return doc;
}

Json gate_catalog_json(std::optional<std::size_t> arity) {
  Json doc = Json::array();
  for (const auto& g : gate_library())
    if (!arity || g.arity == *arity) doc.push_back(gate_json(g));
  return doc;
}

Json peaks_json(const std::vector<Peak>& peaks) {
  Json doc = Json::array();
  for (const auto& p : peaks) {
    Json item;
    item["f1_hz"] = p.f1;
    item["f2_hz"] = p.f2;
    item["magnitude"] = p.magnitude;
    doc.push_back(item);
  }
  return doc;
}

Json correlation_json(const CorrelationMap& map) {
  Json pairs = Json::array();
  // Descending input labels, like a truth table.
  for (auto it = map.pairs.rbegin(); it != map.pairs.rend(); ++it) pairs.push_back(label_pair(it->first, it->second));
  Json doc;
  doc["pairs"] = pairs;
  return doc;
}

Json gate_report_json(const GateReport& report) {
  Json doc;
  doc["gate"] = report.gate;
  doc["pass"] = report.pass;
  Json mismatches = Json::array();
  for (const auto& m : report.mismatches) {
    Json item;
    item["input"] = m.input.str();
    item["expected"] = m.expected.str();
    Json observed = Json::array();
    for (const auto& o : m.observed) observed.push_back(o.str());
    item["observed"] = observed;
    mismatches.push_back(item);
  }
  doc["mismatches"] = mismatches;
  Json unexpected = Json::array();
  for (const auto& [a, b] : report.unexpected) unexpected.push_back(label_pair(a, b));
  doc["unexpected"] = unexpected;
  return doc;
}

Json dj_report_json(const DJOutcome& outcome, const std::vector<IOCorrelationRow>& rows) {
  Json doc;
  doc["function"] = outcome.function;
  doc["bits"] = outcome.bits;
  Json bands;
  for (const auto& band : outcome.bands) {
    Json item;
    item["low_hz"] = band.low_hz;
    item["high_hz"] = band.high_hz;
    item["energy"] = band.spin == 0 ? outcome.work_band_energy : outcome.input_band_energy.at(band.spin - 1);
    item["ratio_to_work"] = band.spin == 0 ? 1.0 : outcome.ratios().at(band.spin - 1);
    bands["I" + std::to_string(band.spin)] = item;
  }
  doc["bands"] = bands;
  doc["verdict"] = std::string(to_string(outcome.verdict));
  Json symbolic = Json::array();
  for (const auto& r : rows) {
    Json item;
    item["input_qubit"] = "I" + std::to_string(r.input_qubit);
    item["input"] = label_pair(r.in_lower, r.in_upper);
    item["output"] = label_pair(r.out_lower, r.out_upper);
    item["class"] = std::string(to_string(r.out_class));
    item["observable"] = r.observable;
    symbolic.push_back(item);
  }
  doc["symbolic_rows"] = symbolic;
  return doc;
}

void write_spectrum_csv(std::ostream& out, const Spectrum2D& spectrum) {
  out << "f1_hz,f2_hz,magnitude\n";
  for (std::size_t r = 0; r < spectrum.rows; ++r) {
    for (std::size_t c = 0; c < spectrum.cols; ++c) {
      out << format_number(spectrum.axis1[r]) << ',' << format_number(spectrum.axis2[c]) << ','
          << format_number(spectrum.at(r, c)) << '\n';
    }
  }
}

std::string ascii_contour(const Spectrum2D& spectrum, std::size_t width, std::size_t height) {
  static constexpr std::string_view kLevels = " .:-=+*#%@";
  if (spectrum.rows == 0 || spectrum.cols == 0 || width == 0 || height == 0) return {};
  width = std::min(width, spectrum.cols);
  height = std::min(height, spectrum.rows);
  const double global = *std::max_element(spectrum.magnitudes.begin(), spectrum.magnitudes.end());
  std::ostringstream out;
  out << "F1 " << format_number(spectrum.axis1.back()) << " Hz (top) .. " << format_number(spectrum.axis1.front())
      << " Hz; F2 " << format_number(spectrum.axis2.front()) << " .. " << format_number(spectrum.axis2.back())
      << " Hz\n";
  // Highest F1 at the top, cells take the maximum of their block.
  for (std::size_t y = height; y-- > 0;) {
    const std::size_t r0 = y * spectrum.rows / height;
    const std::size_t r1 = (y + 1) * spectrum.rows / height;
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t c0 = x * spectrum.cols / width;
      const std::size_t c1 = (x + 1) * spectrum.cols / width;
      double cell = 0.0;
      for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c) cell = std::max(cell, spectrum.at(r, c));
      std::size_t level = global > 0.0 ? static_cast<std::size_t>(cell / global * (kLevels.size() - 1) + 0.5) : 0;
      out << kLevels[std::min(level, kLevels.size() - 1)];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace nmrqc
