#pragma once

// Dataset parsing and the JSON document formats.
//
// Datasets:
//   points CSV     header `id,f[,c1,...,cd]`, one row per point
//   distance CSV   `id,f` CSV plus a matrix file: full n x n, or lower-triangular
//                  rows (strict, or including the zero diagonal)
//   JSON           {"points":[{"id":..,"f":..,"coords":[..]}], "dist":[[..]]}

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "staircode/betti.hpp"
#include "staircode/core.hpp"
#include "staircode/treegram.hpp"

namespace staircode::io {

using Json = nlohmann::json;

AugmentedMetricSpace parse_points_csv(const std::string& text);
AugmentedMetricSpace parse_distance_csv(const std::string& points_text, const std::string& matrix_text);
AugmentedMetricSpace parse_dataset_json(const Json& doc);

/// Reads a dataset by extension (.json or CSV). `matrix` selects the distance-file form.
AugmentedMetricSpace load_dataset(const std::filesystem::path& path,
                                  const std::optional<std::filesystem::path>& matrix = std::nullopt);

/// Point order from ids separated by commas, whitespace or newlines, or a JSON array.
std::vector<PointIndex> parse_order(const std::string& text, const AugmentedMetricSpace& space);

Json dataset_to_json(const AugmentedMetricSpace& space);

/// Full document: order, staircases with decorations, Betti supports, meta.
Json staircode_to_json(const Staircode& code);
Json staircode_to_json(const Staircode& code, const GradedBetti& betti);
/// Inverse of staircode_to_json; the betti field is ignored. Throws InvalidInput.
Staircode staircode_from_json(const Json& doc);

Json betti_to_json(const GradedBetti& betti);
Json bars_to_json(const std::vector<Bar>& bars, const Staircode& code);
Json treegram_to_json(const Treegram& tree, const Staircode& code);
Json line_to_json(const Line& line);

/// "s1,e1:s2,e2". Throws InvalidInput on malformed text or non-positive slope.
Line parse_line(const std::string& text);
/// "s,e". Throws InvalidInput.
Grade parse_grade(const std::string& text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace staircode::io
