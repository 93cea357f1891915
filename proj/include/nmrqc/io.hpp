#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "nmrqc/deutsch_jozsa.hpp"
#include "nmrqc/experiment2d.hpp"
#include "nmrqc/gate_library.hpp"
#include "nmrqc/spin_system.hpp"

namespace nmrqc {

using Json = nlohmann::ordered_json;

/// {"spins": N, "shifts_hz": [...], "j_hz": [[...]], "roles": [...]}
SpinSystem system_from_json(const Json& doc);
Json system_to_json(const SpinSystem& system);
SpinSystem load_system(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json truth_table_json(const Permutation& table);
Json gate_json(const GateSpec& gate);
/// All gates, or only those with the given arity.
Json gate_catalog_json(std::optional<std::size_t> arity = std::nullopt);

Json peaks_json(const std::vector<Peak>& peaks);
Json correlation_json(const CorrelationMap& map);
Json gate_report_json(const GateReport& report);
Json dj_report_json(const DJOutcome& outcome, const std::vector<IOCorrelationRow>& rows);

/// f1_hz,f2_hz,magnitude; one line per spectrum point.
void write_spectrum_csv(std::ostream& out, const Spectrum2D& spectrum);

/// Coarse character-cell rendering of the magnitude spectrum, F1 down the
/// page and F2 across.
std::string ascii_contour(const Spectrum2D& spectrum, std::size_t width = 64, std::size_t height = 32);

}  // namespace nmrqc
