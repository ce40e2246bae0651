#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cli {

using json = nlohmann::ordered_json;

struct Column {
  std::string name;
  std::string doc;
};

using Cell = std::variant<std::monostate, std::string, double, long long, bool>;

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  void add(std::vector<Cell> row);
};

// One data artifact. Everything here must be a pure function of the inputs.
struct Document {
  std::string command;
  std::string nu_kind;  // empty when the output has no frequency column
  Table table;
  std::vector<std::string> annotations;
  json extra = json::object();
};

enum class Format { csv, json };

std::string render(const Document& doc, Format f);

std::string format_double(double v);
std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

// temp file in the target directory, then rename
void write_atomic(const std::string& path, const std::string& bytes);

}  // namespace cli
