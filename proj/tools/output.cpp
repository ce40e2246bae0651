#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <unistd.h>

namespace cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the column list");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  } v;
  return std::visit(v, c);
}

json json_cell(const Cell& c) {
  struct {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(const std::string& s) const { return s; }
    // non-finite values have no JSON literal
    json operator()(double d) const { return std::isfinite(d) ? json(d == 0.0 ? 0.0 : d) : json(format_double(d)); }
    json operator()(long long i) const { return i; }
    json operator()(bool b) const { return b; }
  } v;
  return std::visit(v, c);
}

}  // namespace

std::string render(const Document& doc, Format f) {
  if (f == Format::csv) {
    std::string out;
    for (std::size_t i = 0; i < doc.table.columns.size(); ++i) out += (i ? "," : "") + doc.table.columns[i].name;
    out += "\n";
    for (const auto& row : doc.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
      out += "\n";
    }
    return out;
  }
  json j;
  j["command"] = doc.command;
  if (!doc.nu_kind.empty()) j["nu_kind"] = doc.nu_kind;
  json cols = json::array();
  for (const auto& c : doc.table.columns) cols.push_back(c.name);
  j["columns"] = cols;
  json rows = json::array();
  for (const auto& row : doc.table.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[doc.table.columns[i].name] = json_cell(row[i]);
    rows.push_back(r);
  }
  j["rows"] = rows;
  j["annotations"] = doc.annotations;
  for (auto it = doc.extra.begin(); it != doc.extra.end(); ++it) j[it.key()] = it.value();
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_atomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << bytes;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into place at " + path + ": " + ec.message());
  }
}

}  // namespace cli
