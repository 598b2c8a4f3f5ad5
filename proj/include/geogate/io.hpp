#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "geogate/pulses.hpp"

namespace geogate {

inline constexpr int kSchemaVersion = 1;

// Writes to a sibling temp file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Header line plus one line per row, values with 17 significant digits.
std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

nlohmann::json sequence_to_json(const PulseSequence& seq);
PulseSequence sequence_from_json(const nlohmann::json& j);

}  // namespace geogate
