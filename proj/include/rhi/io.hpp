#pragma once

/**
 * @file io.hpp
 * @brief JSON algebra and map files, and report serialization.
 *
 * Algebra file:
 *   { "field": "Q" | {"Fp": p}, "mode": "presentation" | "table",
 *     "presentation": { "generators": [{"name", "degree"}], "relations": [expr], "truncation_degree": D },
 *     "table": { "basis": [{"name", "degree"}], "unit": name,
 *                "products": [{"left", "right", "value": [[coeff, name], ...]}] } }
 *
 * Map file:
 *   { "domain": path, "codomain": path, "images": { name: expr } }
 * Paths are resolved relative to the map file's directory.
 */

#include "rhi/algebra.hpp"
#include "rhi/invariants.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace rhi {

/// Malformed file contents; the message names the file and the offending field.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgebraFile {
  FieldSpec field;
  bool table_mode = false;
  Presentation presentation;
  MultiplicationTable table;
};

struct MapFile {
  std::filesystem::path domain;
  std::filesystem::path codomain;
  std::map<std::string, std::string> images;
};

nlohmann::json read_json(const std::filesystem::path& path);

AlgebraFile parse_algebra(const nlohmann::json& j, const std::string& source = "<algebra>");
AlgebraFile load_algebra(const std::filesystem::path& path);
nlohmann::json algebra_to_json(const AlgebraFile& a);

MapFile parse_map(const nlohmann::json& j, const std::filesystem::path& base, const std::string& source = "<map>");
MapFile load_map(const std::filesystem::path& path);
nlohmann::json map_to_json(const MapFile& m);

nlohmann::json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::ordered_json report_to_json(const ReportRecord& r);
ReportRecord report_from_json(const nlohmann::json& j);

/// Realizes a parsed algebra file, optionally replacing the truncation degree of a presentation.
template <ExactScalar S>
AlgebraPtr<S> realize(const AlgebraFile& file, std::optional<int> truncation_override = std::nullopt) {
  if (file.table_mode) return realize_table<S>(file.field, file.table);
  Presentation p = file.presentation;
  if (truncation_override) p.truncation_degree = *truncation_override;
  return realize_presentation<S>(file.field, p);
}

}  // namespace rhi
