#pragma once

// JSON state files. Two layouts are accepted, exactly one per document:
//
//   {"matrix": [[[re, im], x4], x4]}
//   {"hs": {"R": [x, y, z], "S": [x, y, z], "T": [[...], x3]}}
//
// Other top-level keys (e.g. "schema_version") are ignored.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "telefid/qstate.hpp"

namespace telefid {

enum class StateLayout { Matrix, HilbertSchmidt };

/// Throws Error(Parse) on structural problems and the validate() errors on
/// a matrix that is not a state.
DensityMatrix state_from_json(const nlohmann::json& doc);
DensityMatrix state_from_string(const std::string& text);
DensityMatrix read_state_file(const std::filesystem::path& path);

nlohmann::json state_to_json(const DensityMatrix& rho, StateLayout layout = StateLayout::HilbertSchmidt);
nlohmann::json hs_to_json(const HilbertSchmidtForm& f);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho,
                      StateLayout layout = StateLayout::HilbertSchmidt);

}  // namespace telefid
