// Summarizes a sweep CSV produced by `gawsim sweep` / `gawsim preset`:
// per metric column it prints the range, the axis locations of the extrema,
// and any strict interior maxima. Useful for checking sweep output without
// a plotting stack.
//
//   sweep_summary <sweep.csv>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  // The generator never quotes cells (numbers, labels, and statuses only),
  // so a plain comma split is faithful.
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::optional<Table> read_csv(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  Table table;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (table.header.empty())
      table.header = split_csv_line(line);
    else
      table.rows.push_back(split_csv_line(line));
  }
  if (table.header.empty()) return std::nullopt;
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <sweep.csv>\n", argv[0]);
    return 2;
  }
  const std::optional<Table> loaded = read_csv(argv[1]);
  if (!loaded) {
    std::fprintf(stderr, "cannot read CSV from '%s'\n", argv[1]);
    return 2;
  }
  const Table& table = *loaded;
  if (table.header.size() < 3 || table.header[1] != "status") {
    std::fprintf(stderr,
                 "'%s' does not look like a sweep table "
                 "(expected <axis>,status,<metrics...>)\n",
                 argv[1]);
    return 2;
  }

  const std::string& axis = table.header[0];
  int skipped = 0;
  std::vector<double> x;
  std::vector<std::vector<double>> metric(table.header.size() - 2);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size() || row[1] != "ok") {
      ++skipped;
      continue;
    }
    x.push_back(std::stod(row[0]));
    for (std::size_t c = 2; c < row.size(); ++c)
      metric[c - 2].push_back(std::stod(row[c]));
  }
  if (x.empty()) {
    std::fprintf(stderr, "no usable rows in '%s'\n", argv[1]);
    return 2;
  }

  std::printf("%s: %zu points over %s in [%g, %g]", argv[1], x.size(), axis.c_str(),
              x.front(), x.back());
  if (skipped > 0) std::printf("  (%d rows without a steady state skipped)", skipped);
  std::printf("\n");

  for (std::size_t c = 0; c < metric.size(); ++c) {
    const std::vector<double>& y = metric[c];
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
      if (y[i] < y[lo]) lo = i;
      if (y[i] > y[hi]) hi = i;
    }
    std::printf("  %-12s min %.6g at %s=%g, max %.6g at %s=%g, span %.6g\n",
                table.header[c + 2].c_str(), y[lo], axis.c_str(), x[lo], y[hi],
                axis.c_str(), x[hi], y[hi] - y[lo]);
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
      if (y[i] > y[i - 1] && y[i] > y[i + 1])
        std::printf("    interior max %.6g at %s=%g\n", y[i], axis.c_str(), x[i]);
  }
  return 0;
}
