#include "hybridlog/csv.hpp"

#include <stdexcept>

namespace hybridlog::csv {

std::string quote(std::string_view field, bool force) {
  bool needs = force || field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs && !field.empty()) {
    auto ws = [](char c) { return c == ' ' || c == '\t'; };
    needs = ws(field.front()) || ws(field.back());
  }
  if (!needs) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += quote(fields[i]);
  }
  out.push_back('\n');
  return out;
}

bool read_row(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;
  std::string cur;
  bool quoted = false;
  bool field_started = false;
  for (;; c = in.get()) {
    if (quoted) {
      if (c == EOF) throw std::runtime_error("csv: unterminated quoted field");
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          cur.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(static_cast<char>(c));
      }
      continue;
    }
    if (c == EOF || c == '\n') break;
    if (c == '\r' && in.peek() == '\n') continue;
    if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      field_started = false;
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
      continue;
    }
    field_started = true;
    cur.push_back(static_cast<char>(c));
  }
  fields.push_back(std::move(cur));
  return true;
}

std::vector<std::vector<std::string>> read_all(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> fields;
  while (read_row(in, fields)) rows.push_back(fields);
  return rows;
}

}  // namespace hybridlog::csv
