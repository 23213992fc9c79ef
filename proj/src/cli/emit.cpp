#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include "hylab/cli.hpp"
#include "hylab/common/errors.hpp"
#include "json.hpp"

namespace hylab::cli {

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  fail(ErrorKind::InvalidInput, "format must be csv or json");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    out += (i ? "," : "") + quote(t.header[i]);
  }
  out += "\n";
  for (const auto& row : t.rows) {
    require(row.size() == t.header.size(), ErrorKind::InvalidInput, "row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + quote(cell_text(row[i]));
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    require(row.size() == t.header.size(), ErrorKind::InvalidInput, "row width differs from header");
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[t.header[i]] = v; }, row[i]);
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

void emit(const Table& t, Format format, const std::string& path) {
  const std::string body = format == Format::csv ? to_csv(t) : to_json(t);
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  require(f.good(), ErrorKind::IoError, "cannot open '" + path + "' for writing");
  f << body;
  require(f.good(), ErrorKind::IoError, "write to '" + path + "' failed");
}

Table parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> cur;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == ',') {
      cur.push_back(field);
      field.clear();
      any = true;
    } else if (ch == '\n') {
      cur.push_back(field);
      records.push_back(cur);
      cur.clear();
      field.clear();
      any = false;
    } else if (ch != '\r') {
      field += ch;
      any = true;
    }
  }
  if (any) {
    cur.push_back(field);
    records.push_back(cur);
  }
  require(!quoted, ErrorKind::InvalidInput, "unterminated quoted CSV field");
  Table t;
  if (records.empty()) return t;
  t.header = records.front();
  for (std::size_t r = 1; r < records.size(); ++r) {
    std::vector<Cell> row;
    for (const std::string& s : records[r]) row.emplace_back(s);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace hylab::cli
