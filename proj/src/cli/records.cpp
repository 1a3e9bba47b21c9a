#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

#include "bh/cli.hpp"

namespace bh::cli {
namespace {

std::string format_double(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

struct Text {
  int digits;
  std::string operator()(std::monostate) const { return ""; }
  std::string operator()(const std::string& s) const { return s; }
  std::string operator()(double v) const { return format_double(v, digits); }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const Literal& l) const { return l.text; }
};

struct Json {
  std::string operator()(std::monostate) const { return "null"; }
  std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
  std::string operator()(double v) const { return std::isfinite(v) ? format_double(v, 17) : "null"; }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const Literal& l) const { return l.text; }
};

void write_csv(std::ostream& out, const Records& r) {
  for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << r.columns[c];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string text = std::visit(Text{17}, row[c]);
      out << (c ? "," : "") << (std::holds_alternative<std::string>(row[c]) ? csv_quote(text) : text);
    }
    out << '\n';
  }
}

void write_jsonl(std::ostream& out, const Records& r) {
  for (const auto& row : r.rows) {
    out << "{\"schema_version\":" << kSchemaVersion << ",\"record\":" << nlohmann::json(r.kind).dump();
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << ',' << nlohmann::json(r.columns[c]).dump() << ':' << std::visit(Json{}, row[c]);
    }
    out << "}\n";
  }
}

void write_table(std::ostream& out, const Records& r) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(r.columns.size());
  for (std::size_t c = 0; c < r.columns.size(); ++c) width[c] = r.columns[c].size();
  for (const auto& row : r.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(std::visit(Text{6}, row[c]));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string s;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) s += "  ";
      s += line[c];
      if (c + 1 < line.size()) s.append(width[c] - line[c].size(), ' ');
    }
    out << s << '\n';
  };
  emit(r.columns);
  for (const auto& line : cells) emit(line);
}

}  // namespace

void write_records(std::ostream& out, const Records& records, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv:
      write_csv(out, records);
      break;
    case OutputFormat::JsonLines:
      write_jsonl(out, records);
      break;
    case OutputFormat::Table:
      write_table(out, records);
      break;
  }
}

}  // namespace bh::cli
