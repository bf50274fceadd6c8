#pragma once

// Matrix file format:
//   {"matrices": [{"name": "A", "rows": [[[re, im], ...], ...]}, ...]}

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "schatten/linalg.hpp"

namespace schatten {

struct NamedMatrix {
  std::string name;
  ComplexMatrix value;
};

/// Throws ParseError on malformed documents, including ragged or non-square rows.
std::vector<NamedMatrix> parse_matrix_document(const nlohmann::json& doc);
std::vector<NamedMatrix> parse_matrix_text(std::string_view text);
std::vector<NamedMatrix> read_matrix_file(const std::filesystem::path& path);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json matrices_to_json(const std::vector<NamedMatrix>& ms);

}  // namespace schatten
