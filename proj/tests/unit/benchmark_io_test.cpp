#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "balance/benchmark_io.h"
#include "oracles.h"

namespace balance {
namespace {

const std::string kDataDir = BALANCE_DATA_DIR;

std::string scen_path(int k) { return kDataDir + "/scen/random-32-32-10-random-" + std::to_string(k) + ".scen"; }

int error_line(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(ParseMap, SmallMap) {
  const GridMap map = parse_map("type octile\nheight 2\nwidth 2\nmap\n.@\n..\n");
  EXPECT_EQ(map.width(), 2);
  EXPECT_EQ(map.height(), 2);
  EXPECT_EQ(map.passable_count(), 3);
  EXPECT_FALSE(map.passable(Location{0, 1}));
}

TEST(ParseMap, CellAlphabet) {
  const GridMap map = parse_map("type octile\nheight 1\nwidth 7\nmap\n.GS@OTW\n");
  EXPECT_EQ(map.passable_count(), 3);
  for (int c = 0; c < 3; ++c) EXPECT_TRUE(map.passable(Location{0, c}));
  for (int c = 3; c < 7; ++c) EXPECT_FALSE(map.passable(Location{0, c}));
}

TEST(ParseMap, WidthBeforeHeightAndCrlf) {
  const GridMap map = parse_map("type octile\r\nwidth 3\r\nheight 1\r\nmap\r\n.@.\r\n");
  EXPECT_EQ(map.width(), 3);
  EXPECT_EQ(map.height(), 1);
}

TEST(ParseMap, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line([] { parse_map("type octile\nheight 3\nwidth 2\nmap\n..\n..\n"); }), 6);
  EXPECT_EQ(error_line([] { parse_map("type octile\nheight 1\nwidth 2\nmap\n..\n..\n"); }), 6);
  EXPECT_EQ(error_line([] { parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n.x\n"); }), 6);
  EXPECT_EQ(error_line([] { parse_map("type octile\nheight 2\nwidth 3\nmap\n..\n...\n"); }), 5);
  EXPECT_EQ(error_line([] { parse_map("type octile\nheight two\nwidth 2\nmap\n"); }), 2);
  EXPECT_EQ(error_line([] { parse_map("type octile\nheight 1\nwidth 2\nnotmap\n..\n"); }), 4);
  EXPECT_EQ(error_line([] { parse_map("octile\nheight 1\nwidth 2\nmap\n..\n"); }), 1);
  EXPECT_EQ(error_line([] { parse_map("type octile\nheight 1\n"); }), 3);
}

TEST(ParseMap, RenderRoundTrip) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const GridMap map = oracle::random_grid(1 + rng() % 12, 1 + rng() % 12, 0.3, rng);
    EXPECT_EQ(parse_map(render_map(map)), map);
  }
}

TEST(ParseMap, BenchmarkMap) {
  const GridMap map = parse_map(read_file(kDataDir + "/random-32-32-10.map"));
  EXPECT_EQ(map.width(), 32);
  EXPECT_EQ(map.height(), 32);
  const int blocked = map.size() - map.passable_count();
  EXPECT_EQ(blocked, 102);
  EXPECT_NEAR(blocked / 1024.0, 0.10, 0.01);
}

TEST(ParseScen, OneLine) {
  const auto entries = parse_scen("version 1\n3\tm.map\t32\t32\t4\t7\t9\t1\t12.5\n");
  ASSERT_EQ(entries.size(), 1u);
  const ScenarioEntry& e = entries[0];
  EXPECT_EQ(e.bucket, 3);
  EXPECT_EQ(e.map_name, "m.map");
  EXPECT_EQ(e.start_col, 4);
  EXPECT_EQ(e.start_row, 7);
  EXPECT_EQ(e.goal_col, 9);
  EXPECT_EQ(e.goal_row, 1);
  EXPECT_DOUBLE_EQ(e.optimal_length, 12.5);
}

TEST(ParseScen, VersionLineOptionalAndEmptyBody) {
  EXPECT_TRUE(parse_scen("version 1\n").empty());
  EXPECT_TRUE(parse_scen("").empty());
  EXPECT_EQ(parse_scen("0\tm\t4\t4\t0\t0\t1\t1\t2\n").size(), 1u);
}

TEST(ParseScen, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line([] { parse_scen("version 1\n0\tm\t4\t4\t0\t0\t1\t1\n"); }), 2);
  EXPECT_EQ(error_line([] { parse_scen("version 1\n0\tm\t4\t4\t0\t0\t1\t1\t2\n0\tm\t4\t4\tx\t0\t1\t1\t2\n"); }), 3);
  EXPECT_EQ(error_line([] { parse_scen("version 1\n0\tm\t4\t4\t0\t4\t1\t1\t2\n"); }), 2);
}

TEST(ParseScen, BenchmarkScenariosStayInsideTheMap) {
  for (int k = 1; k <= 25; ++k) {
    const auto entries = parse_scen(read_file(scen_path(k)));
    ASSERT_EQ(entries.size(), 500u);
    for (const auto& e : entries) {
      EXPECT_LT(e.start_col, 32);
      EXPECT_LT(e.start_row, 32);
      EXPECT_LT(e.goal_col, 32);
      EXPECT_LT(e.goal_row, 32);
    }
  }
}

TEST(BuildInstance, AgentCounts) {
  const GridMap map = parse_map(read_file(kDataDir + "/random-32-32-10.map"));
  const auto entries = parse_scen(read_file(scen_path(1)));
  EXPECT_THROW(build_instance(map, entries, 0), std::invalid_argument);
  EXPECT_THROW(build_instance(map, entries, 501), std::invalid_argument);
  const Instance all = build_instance(map, entries, 500);
  EXPECT_EQ(all.num_agents(), 500);
  const Instance two_hundred = build_instance(map, entries, 200);
  EXPECT_EQ(two_hundred.num_agents(), 200);
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(two_hundred.agent(i).id, i);
    EXPECT_EQ(two_hundred.agent(i).start, map.to_vertex({entries[i].start_row, entries[i].start_col}));
    EXPECT_EQ(two_hundred.agent(i).goal, map.to_vertex({entries[i].goal_row, entries[i].goal_col}));
  }
  // Deterministic given (entries, m).
  const Instance again = build_instance(map, entries, 200);
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(again.agent(i).start, two_hundred.agent(i).start);
    EXPECT_EQ(again.agent(i).goal, two_hundred.agent(i).goal);
  }
  EXPECT_TRUE(check_optimal_lengths(all, entries).empty());
}

TEST(BuildInstance, RejectsBlockedAndDuplicateEndpoints) {
  const GridMap map = oracle::grid_from_rows({"..@", "..."});
  const auto blocked = parse_scen("0\tm\t3\t2\t2\t0\t0\t0\t2\n");
  EXPECT_THROW(build_instance(map, blocked, 1), std::invalid_argument);
  const auto dup = parse_scen("0\tm\t3\t2\t0\t0\t1\t1\t2\n0\tm\t3\t2\t0\t0\t2\t1\t3\n");
  EXPECT_NO_THROW(build_instance(map, dup, 1));
  EXPECT_THROW(build_instance(map, dup, 2), std::invalid_argument);
}

TEST(CheckOptimalLengths, SwappedCoordinatesAreReported) {
  const GridMap map = oracle::grid_from_rows({"....", "@@@.", "...."});
  // (row 2, col 0) is 8 steps from (row 0, col 0); the entry claims 2.
  const auto entries = parse_scen("0\tm\t4\t3\t0\t0\t0\t2\t2\n");
  EXPECT_EQ(check_optimal_lengths(build_instance(map, entries, 1), entries).size(), 1u);
}

CsvRecord sample_record(int i) {
  CsvRecord r;
  r.map = "random-32-32-10";
  r.scenario = "scen, \"quoted\" " + std::to_string(i);
  r.algorithm = "thompson";
  r.m = 200;
  r.seed = 7 + i;
  r.budget_seconds = 10.0;
  r.iteration = i;
  r.elapsed_ms = 0.1 * i + 1.0 / 3.0;
  r.heuristic = "agent";
  r.neighborhood_size = 8;
  r.reward = i * 3;
  r.cost = 1000 - i;
  return r;
}

TEST(Csv, EmptyListIsHeaderOnly) {
  std::ostringstream out;
  write_records({}, out);
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n");
}

TEST(Csv, OneRecordIsTwoLines) {
  std::ostringstream out;
  write_records({sample_record(1)}, out);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Csv, RoundTrip) {
  std::vector<CsvRecord> records;
  for (int i = 0; i < 20; ++i) records.push_back(sample_record(i));
  std::stringstream buf;
  write_records(records, buf);
  EXPECT_EQ(read_records(buf), records);
}

TEST(Csv, RejectsWrongHeaderAndFieldCount) {
  std::istringstream bad_header("a,b,c\n");
  EXPECT_THROW(read_records(bad_header), ParseError);
  std::istringstream short_row(std::string(kCsvHeader) + "\nx,y\n");
  EXPECT_EQ(error_line([&] { read_records(short_row); }), 2);
}

TEST(Csv, WriteFailureSurfaces) {
  std::ostringstream out;
  out.setstate(std::ios_base::badbit);
  EXPECT_THROW(write_records({sample_record(0)}, out), std::ios_base::failure);
}

TEST(Csv, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(10.0), "10");
}

}  // namespace
}  // namespace balance
