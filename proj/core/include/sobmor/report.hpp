#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sobmor {

// Fixed 17-significant-digit text for doubles; the one formatting used in
// every emitted artifact so reruns are byte-identical.
std::string format_double(double v);

struct Cell {
  std::string text;
  bool quoted = false;  // JSON: emit as string rather than raw number

  Cell() = default;
  Cell(std::string t, bool q) : text(std::move(t)), quoted(q) {}
};

Cell num_cell(double v);
Cell int_cell(long long v);
Cell str_cell(std::string s);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> cells) { rows.push_back(std::move(cells)); }
};

std::string to_csv(const Table& t);
// {"columns": [...], "rows": [[...], ...]} with numeric cells emitted raw
std::string to_json(const Table& t);

// temp file + rename in the destination directory
void write_atomic(const std::filesystem::path& path, std::string_view text);

// Reader for the toolkit's own CSV output (plain fields, no quoting).
Table read_csv(const std::filesystem::path& path);

}  // namespace sobmor
