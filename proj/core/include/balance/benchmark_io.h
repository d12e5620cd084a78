#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "balance/grid.h"
#include "balance/instance.h"

namespace balance {

/// Malformed map, scenario or CSV input. `line()` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the movingai benchmark map format:
///   type octile / height H / width W / map / H rows of W cells.
/// '.', 'G' and 'S' are passable; '@', 'O', 'T' and 'W' are blocked.
GridMap parse_map(std::string_view text);

/// Inverse of parse_map on the passability grid ('.' and '@' only).
std::string render_map(const GridMap& map);

struct ScenarioEntry {
  int bucket = 0;
  std::string map_name;
  int map_width = 0;
  int map_height = 0;
  int start_col = 0;
  int start_row = 0;
  int goal_col = 0;
  int goal_row = 0;
  double optimal_length = 0.0;
};

/// Parses a `.scen` file: optional `version` line, then tab-separated
/// bucket, map, width, height, start x, start y, goal x, goal y, optimal
/// length. x is the column and y the row.
std::vector<ScenarioEntry> parse_scen(std::string_view text);

/// Instance over the first `m` scenario entries (agent i = entry i).
Instance build_instance(const GridMap& map, const std::vector<ScenarioEntry>& entries, int m);

/// Agents whose BFS distance differs from round(optimal_length), one message
/// each. Octile-distance scenario files legitimately produce some.
std::vector<std::string> check_optimal_lengths(const Instance& instance,
                                               const std::vector<ScenarioEntry>& entries);

std::string read_file(const std::string& path);

/// One anytime-trace row.
struct CsvRecord {
  std::string map;
  std::string scenario;
  std::string algorithm;
  int m = 0;
  long seed = 0;
  double budget_seconds = 0.0;
  long iteration = 0;
  double elapsed_ms = 0.0;
  std::string heuristic;
  int neighborhood_size = 0;
  long reward = 0;
  long cost = 0;

  friend bool operator==(const CsvRecord&, const CsvRecord&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "map,scenario,algorithm,m,seed,budget_seconds,iteration,elapsed_ms,heuristic,"
    "neighborhood_size,reward,cost";

/// Header line plus one row per record. Throws std::ios_base::failure if the
/// stream reports an error.
void write_records(const std::vector<CsvRecord>& records, std::ostream& sink);
std::vector<CsvRecord> read_records(std::istream& source);

/// Comma-separated fields with double-quote escaping.
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);
/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace balance
