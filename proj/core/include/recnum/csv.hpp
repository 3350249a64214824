// csv.hpp — the experiment file formats.  Frontier CSVs carry
// lexicon_size,avg_ms_complexity,D,M (D and M as ';'-joined integers);
// trajectory CSVs add the bandit and accuracy columns.  Reals are printed
// with 12 significant digits so seeded runs are byte-reproducible.

#ifndef RECNUM_CSV_HPP
#define RECNUM_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "recnum/evolution.hpp"
#include "recnum/pareto.hpp"

namespace recnum {

std::string format_real(double v);  // %.12g

std::string join_values(const std::vector<int>& values);  // "1;2;3"
std::vector<int> split_values(const std::string& joined);

void write_frontier_csv(const std::vector<Candidate>& points,
                        std::ostream& out);
void write_frontier_csv(const std::vector<Candidate>& points,
                        const std::string& path);

void write_trajectory_csv(const std::vector<TrajectoryRecord>& records,
                          std::ostream& out);
void write_trajectory_csv(const std::vector<TrajectoryRecord>& records,
                          const std::string& path);

// n,expression,complexity rows for a concrete language.
void write_lexicon_csv(const Lexicon& lexicon, std::ostream& out);
void write_lexicon_csv(const Lexicon& lexicon, const std::string& path);

// |M| histogram: m_cardinality,count.
void write_m_histogram_csv(const std::vector<std::pair<int, int>>& bars,
                           std::ostream& out);
void write_m_histogram_csv(const std::vector<std::pair<int, int>>& bars,
                           const std::string& path);

struct OverlayPoint {
  double lexicon_size = 0.0;
  double avg_ms_complexity = 0.0;
};

// Reads any CSV with lexicon_size and avg_ms_complexity header columns
// (frontier and trajectory files both qualify).
std::vector<OverlayPoint> read_overlay_csv(const std::string& path);

// Reads a frontier CSV back, including the D/M columns.
struct FrontierRow {
  int lexicon_size = 0;
  double avg_ms_complexity = 0.0;
  std::vector<int> digits;
  std::vector<int> multipliers;
};
std::vector<FrontierRow> read_frontier_csv(const std::string& path);

}  // namespace recnum

#endif  // RECNUM_CSV_HPP
