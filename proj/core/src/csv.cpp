#include "recnum/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace recnum {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' endings everywhere
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string join_values(const std::vector<int>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(values[i]);
  }
  return out;
}

std::vector<int> split_values(const std::string& joined) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(joined);
  while (std::getline(in, item, ';')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

void write_frontier_csv(const std::vector<Candidate>& points,
                        std::ostream& out) {
  out << "lexicon_size,avg_ms_complexity,D,M\n";
  for (const Candidate& c : points) {
    out << c.lexicon_size << ',' << format_real(c.avg_complexity) << ','
        << join_values(c.dm.digits()) << ',' << join_values(c.dm.multipliers())
        << '\n';
  }
}

void write_frontier_csv(const std::vector<Candidate>& points,
                        const std::string& path) {
  auto out = open_out(path);
  write_frontier_csv(points, out);
}

void write_trajectory_csv(const std::vector<TrajectoryRecord>& records,
                          std::ostream& out) {
  out << "step,lexicon_size,avg_ms_complexity,D,M,q_current,q_alt,accuracy,"
         "mutation\n";
  for (const TrajectoryRecord& r : records) {
    out << r.step << ',' << r.lexicon_size << ','
        << format_real(r.avg_ms_complexity) << ','
        << join_values(r.dm.digits()) << ',' << join_values(r.dm.multipliers())
        << ',' << format_real(r.q_final[0]) << ',' << format_real(r.q_final[1])
        << ',' << format_real(r.accuracy) << ','
        << (r.mutation ? mutation_name(*r.mutation) : "none") << '\n';
  }
}

void write_trajectory_csv(const std::vector<TrajectoryRecord>& records,
                          const std::string& path) {
  auto out = open_out(path);
  write_trajectory_csv(records, out);
}

void write_lexicon_csv(const Lexicon& lexicon, std::ostream& out) {
  out << "n,expression,complexity\n";
  for (int n = 1; n <= lexicon.n_max(); ++n) {
    out << n << ',' << render(lexicon.entry(n)) << ','
        << lexicon.complexity(n) << '\n';
  }
}

void write_lexicon_csv(const Lexicon& lexicon, const std::string& path) {
  auto out = open_out(path);
  write_lexicon_csv(lexicon, out);
}

void write_m_histogram_csv(const std::vector<std::pair<int, int>>& bars,
                           std::ostream& out) {
  out << "m_cardinality,count\n";
  for (const auto& [cardinality, count] : bars) {
    out << cardinality << ',' << count << '\n';
  }
}

void write_m_histogram_csv(const std::vector<std::pair<int, int>>& bars,
                           const std::string& path) {
  auto out = open_out(path);
  write_m_histogram_csv(bars, out);
}

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) {
    throw std::runtime_error("'" + path + "' is empty");
  }
  return rows;
}

int find_column(const std::vector<std::string>& header,
                const std::string& name, const std::string& path) {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  throw std::runtime_error("'" + path + "' has no '" + name + "' column");
}

}  // namespace

std::vector<OverlayPoint> read_overlay_csv(const std::string& path) {
  auto rows = read_csv(path);
  int size_col = find_column(rows[0], "lexicon_size", path);
  int avg_col = find_column(rows[0], "avg_ms_complexity", path);
  std::vector<OverlayPoint> points;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) <= std::max(size_col, avg_col)) {
      throw std::runtime_error("'" + path + "' row " + std::to_string(i + 1) +
                               " is malformed");
    }
    points.push_back(OverlayPoint{std::stod(rows[i][size_col]),
                                  std::stod(rows[i][avg_col])});
  }
  return points;
}

std::vector<FrontierRow> read_frontier_csv(const std::string& path) {
  auto rows = read_csv(path);
  int size_col = find_column(rows[0], "lexicon_size", path);
  int avg_col = find_column(rows[0], "avg_ms_complexity", path);
  int d_col = find_column(rows[0], "D", path);
  int m_col = find_column(rows[0], "M", path);
  std::vector<FrontierRow> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    int needed = std::max(std::max(size_col, avg_col), std::max(d_col, m_col));
    if (static_cast<int>(r.size()) <= needed) {
      throw std::runtime_error("'" + path + "' row " + std::to_string(i + 1) +
                               " is malformed");
    }
    FrontierRow row;
    row.lexicon_size = std::stoi(r[size_col]);
    row.avg_ms_complexity = std::stod(r[avg_col]);
    row.digits = split_values(r[d_col]);
    row.multipliers = split_values(r[m_col]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace recnum
