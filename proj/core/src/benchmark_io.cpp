#include "balance/benchmark_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "balance/distance.h"

namespace balance {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = strip(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

int parse_header_int(std::string_view line, std::string_view key, int line_no) {
  std::string_view rest = strip(line);
  if (rest.substr(0, key.size()) != key)
    throw ParseError(line_no, "expected '" + std::string(key) + " <n>'");
  int value = 0;
  if (!parse_number(rest.substr(key.size()), value) || value <= 0)
    throw ParseError(line_no, "invalid " + std::string(key) + " value");
  return value;
}

}  // namespace

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

GridMap parse_map(std::string_view text) {
  const auto lines = split_lines(text);
  int height = -1;
  int width = -1;
  size_t idx = 0;
  auto next_line = [&]() -> std::string_view {
    if (idx >= lines.size()) throw ParseError(static_cast<int>(idx) + 1, "unexpected end of map header");
    return lines[idx++];
  };

  if (strip(next_line()).substr(0, 4) != "type") throw ParseError(1, "expected 'type octile'");
  // height and width appear in either order in the wild.
  for (int i = 0; i < 2; ++i) {
    const std::string_view line = strip(next_line());
    const int line_no = static_cast<int>(idx);
    if (line.substr(0, 6) == "height")
      height = parse_header_int(line, "height", line_no);
    else if (line.substr(0, 5) == "width")
      width = parse_header_int(line, "width", line_no);
    else
      throw ParseError(line_no, "expected 'height <n>' or 'width <n>'");
  }
  if (height < 0 || width < 0) throw ParseError(static_cast<int>(idx), "missing height or width");
  if (strip(next_line()) != "map") throw ParseError(static_cast<int>(idx), "expected 'map'");

  std::vector<uint8_t> cells;
  cells.reserve(static_cast<size_t>(width) * height);
  int rows = 0;
  for (; idx < lines.size(); ++idx) {
    const std::string_view row = lines[idx];
    const int line_no = static_cast<int>(idx) + 1;
    if (row.empty()) {
      // Only trailing blank lines are tolerated.
      for (size_t j = idx; j < lines.size(); ++j)
        if (!strip(lines[j]).empty()) throw ParseError(line_no, "blank line inside map body");
      break;
    }
    if (rows == height) throw ParseError(line_no, "more rows than declared height " + std::to_string(height));
    if (static_cast<int>(row.size()) != width)
      throw ParseError(line_no, "row has " + std::to_string(row.size()) + " cells, expected " +
                                    std::to_string(width));
    for (char c : row) {
      switch (c) {
        case '.': case 'G': case 'S': cells.push_back(1); break;
        case '@': case 'O': case 'T': case 'W': cells.push_back(0); break;
        default:
          throw ParseError(line_no, std::string("unknown cell character '") + c + "'");
      }
    }
    ++rows;
  }
  if (rows != height)
    throw ParseError(static_cast<int>(lines.size()),
                     "found " + std::to_string(rows) + " rows, expected " + std::to_string(height));
  return GridMap(width, height, std::move(cells));
}

std::string render_map(const GridMap& map) {
  std::string out = "type octile\nheight " + std::to_string(map.height()) + "\nwidth " +
                    std::to_string(map.width()) + "\nmap\n";
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) out += map.passable(Location{r, c}) ? '.' : '@';
    out += '\n';
  }
  return out;
}

std::vector<ScenarioEntry> parse_scen(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<ScenarioEntry> entries;
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const std::string_view line = lines[i];
    if (strip(line).empty()) continue;
    if (i == 0 && strip(line).substr(0, 7) == "version") continue;

    std::vector<std::string_view> fields;
    size_t pos = 0;
    while (true) {
      const size_t tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    if (fields.size() != 9)
      throw ParseError(line_no, "expected 9 tab-separated fields, found " + std::to_string(fields.size()));

    ScenarioEntry e;
    e.map_name = std::string(strip(fields[1]));
    bool ok = parse_number(fields[0], e.bucket) && parse_number(fields[2], e.map_width) &&
              parse_number(fields[3], e.map_height) && parse_number(fields[4], e.start_col) &&
              parse_number(fields[5], e.start_row) && parse_number(fields[6], e.goal_col) &&
              parse_number(fields[7], e.goal_row) && parse_number(fields[8], e.optimal_length);
    if (!ok) throw ParseError(line_no, "non-numeric scenario field");
    auto inside = [&](int col, int row) {
      return col >= 0 && row >= 0 && col < e.map_width && row < e.map_height;
    };
    if (!inside(e.start_col, e.start_row) || !inside(e.goal_col, e.goal_row))
      throw ParseError(line_no, "coordinates outside the declared map dimensions");
    entries.push_back(std::move(e));
  }
  return entries;
}

Instance build_instance(const GridMap& map, const std::vector<ScenarioEntry>& entries, int m) {
  if (m < 1) throw std::invalid_argument("at least one agent is required");
  if (m > static_cast<int>(entries.size()))
    throw std::invalid_argument("requested " + std::to_string(m) + " agents but the scenario has " +
                                std::to_string(entries.size()));
  std::vector<Agent> agents;
  agents.reserve(m);
  for (int i = 0; i < m; ++i) {
    const ScenarioEntry& e = entries[i];
    const Location start{e.start_row, e.start_col};
    const Location goal{e.goal_row, e.goal_col};
    if (!map.contains(start) || !map.contains(goal))
      throw std::invalid_argument("scenario entry " + std::to_string(i) + " lies outside the map");
    agents.push_back({i, map.to_vertex(start), map.to_vertex(goal)});
  }
  return Instance(map, std::move(agents));
}

std::vector<std::string> check_optimal_lengths(const Instance& instance,
                                               const std::vector<ScenarioEntry>& entries) {
  std::vector<std::string> warnings;
  for (const Agent& a : instance.agents()) {
    if (a.id >= static_cast<int>(entries.size())) break;
    const double expected = entries[a.id].optimal_length;
    if (expected <= 0.0 && a.start != a.goal) continue;  // not provided
    const int bfs = bfs_distances(instance.map(), a.goal)[a.start];
    if (bfs == kUnreachable) {
      warnings.push_back("agent " + std::to_string(a.id) + ": goal unreachable from start");
    } else if (bfs != static_cast<int>(std::lround(expected))) {
      warnings.push_back("agent " + std::to_string(a.id) + ": BFS distance " + std::to_string(bfs) +
                         " differs from scenario optimal length " + format_double(expected));
    }
  }
  return warnings;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

void write_records(const std::vector<CsvRecord>& records, std::ostream& sink) {
  sink << kCsvHeader << '\n';
  for (const CsvRecord& r : records) {
    sink << csv_escape(r.map) << ',' << csv_escape(r.scenario) << ',' << csv_escape(r.algorithm) << ','
         << r.m << ',' << r.seed << ',' << format_double(r.budget_seconds) << ',' << r.iteration << ','
         << format_double(r.elapsed_ms) << ',' << csv_escape(r.heuristic) << ','
         << r.neighborhood_size << ',' << r.reward << ',' << r.cost << '\n';
  }
  sink.flush();
  if (!sink) throw std::ios_base::failure("failed writing CSV records");
}

std::vector<CsvRecord> read_records(std::istream& source) {
  std::vector<CsvRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kCsvHeader) throw ParseError(1, "unexpected CSV header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 12) throw ParseError(line_no, "expected 12 CSV fields");
    CsvRecord r;
    r.map = f[0];
    r.scenario = f[1];
    r.algorithm = f[2];
    r.heuristic = f[8];
    const bool ok = parse_number(f[3], r.m) && parse_number(f[4], r.seed) &&
                    parse_number(f[5], r.budget_seconds) && parse_number(f[6], r.iteration) &&
                    parse_number(f[7], r.elapsed_ms) && parse_number(f[9], r.neighborhood_size) &&
                    parse_number(f[10], r.reward) && parse_number(f[11], r.cost);
    if (!ok) throw ParseError(line_no, "non-numeric CSV field");
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace balance
