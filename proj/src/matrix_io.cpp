#include "schatten/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace schatten {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

Complex parse_entry(const nlohmann::json& e, const std::string& where) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    fail(where + ": entry must be [re, im]");
  return {e[0].get<double>(), e[1].get<double>()};
}

ComplexMatrix parse_rows(const nlohmann::json& rows, const std::string& name) {
  if (!rows.is_array() || rows.empty()) fail(name + ": \"rows\" must be a nonempty list");
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      fail(name + ": row " + std::to_string(i) + " has length " +
           std::to_string(row.is_array() ? row.size() : 0) + ", expected " + std::to_string(n));
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = parse_entry(row[static_cast<std::size_t>(j)], name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  if (!m.allFinite()) fail(name + ": non-finite entry");
  return m;
}

}  // namespace

std::vector<NamedMatrix> parse_matrix_document(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("matrices") || !doc["matrices"].is_array())
    fail("document must be an object with a \"matrices\" list");
  std::vector<NamedMatrix> out;
  for (const auto& item : doc["matrices"]) {
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string() || !item.contains("rows"))
      fail("each matrix needs \"name\" and \"rows\"");
    auto name = item["name"].get<std::string>();
    out.push_back({name, parse_rows(item["rows"], name)});
  }
  return out;
}

std::vector<NamedMatrix> parse_matrix_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(e.what());
  }
  return parse_matrix_document(doc);
}

std::vector<NamedMatrix> read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_text(ss.str());
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json matrices_to_json(const std::vector<NamedMatrix>& ms) {
  auto list = nlohmann::json::array();
  for (const auto& m : ms) list.push_back({{"name", m.name}, {"rows", matrix_to_json(m.value)}});
  return {{"matrices", list}};
}

}  // namespace schatten
