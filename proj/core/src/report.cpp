#include "sobmor/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sobmor/error.hpp"

namespace sobmor {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Cell num_cell(double v) { return {format_double(v), false}; }

Cell int_cell(long long v) { return {std::to_string(v), false}; }

Cell str_cell(std::string s) { return {std::move(s), true}; }

std::string to_csv(const Table& t) {
  std::ostringstream out;
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    out << (c ? "," : "") << t.columns[c];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << row[c].text;
    out << '\n';
  }
  return out.str();
}

namespace {

void json_escape(std::ostringstream& out, std::string_view s) {
  out << '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\t': out << "\\t"; break;
      default: out << ch;
    }
  }
  out << '"';
}

}  // namespace

std::string to_json(const Table& t) {
  std::ostringstream out;
  out << "{\"columns\":[";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out << ',';
    json_escape(out, t.columns[c]);
  }
  out << "],\"rows\":[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (r) out << ',';
    out << '[';
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      if (c) out << ',';
      const Cell& cell = t.rows[r][c];
      if (cell.quoted)
        json_escape(out, cell.text);
      else
        out << cell.text;
    }
    out << ']';
  }
  out << "]}\n";
  return out.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  const auto dir = path.parent_path();
  if (!dir.empty()) {
    std::filesystem::create_directories(dir, ec);
    ec.clear();
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorCode::IoError, "cannot open " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
      throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw Error(ErrorCode::IoError,
                "rename to " + path.string() + " failed: " + ec.message());
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  Table t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (header) {
      t.columns = fields;
      header = false;
    } else {
      std::vector<Cell> row;
      row.reserve(fields.size());
      for (auto& f : fields) {
        char* end = nullptr;
        std::strtod(f.c_str(), &end);
        const bool numeric =
            end != f.c_str() && *end == '\0' && !f.empty();
        row.emplace_back(std::move(f), !numeric);
      }
      t.add_row(std::move(row));
    }
  }
  return t;
}

}  // namespace sobmor
