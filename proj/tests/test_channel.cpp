#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "splitedge/channel.hpp"
#include "splitedge/errors.hpp"
#include "test_support.hpp"

using namespace splitedge;
using doctest::Approx;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::trunc);
  out << contents;
  return path;
}

}  // namespace

TEST_CASE("load_trace parses the frame,gain_db schema") {
  const auto path = write_temp("splitedge_trace_ok.csv", "frame,gain_db\n0,-100.0\n1,-95.5\n");
  const ChannelTrace trace = load_trace(path);
  CHECK(trace.size() == 2);
  CHECK(trace.gains_db[0] == -100.0);
  CHECK(trace.gains_db[1] == -95.5);
  CHECK(trace.source == TraceSource::file);
  std::filesystem::remove(path);
}

TEST_CASE("load_trace rejects bad files") {
  const auto empty = write_temp("splitedge_trace_empty.csv", "");
  CHECK_THROWS_AS(load_trace(empty), EmptyTraceError);

  const auto header_only = write_temp("splitedge_trace_header.csv", "frame,gain_db\n");
  CHECK_THROWS_AS(load_trace(header_only), EmptyTraceError);

  const auto bad_frame = write_temp("splitedge_trace_frame.csv", "frame,gain_db\n0,-90\n2,-91\n");
  CHECK_THROWS_AS(load_trace(bad_frame), ParseError);

  const auto bad_field = write_temp("splitedge_trace_field.csv", "frame,gain_db\n0,oops\n");
  CHECK_THROWS_AS(load_trace(bad_field), ParseError);

  for (const auto& path : {empty, header_only, bad_frame, bad_field}) {
    std::filesystem::remove(path);
  }
}

TEST_CASE("dB conversion and round trip") {
  CHECK(db_to_linear(-100.0) == Approx(1e-10).epsilon(1e-12));
  CHECK(db_to_linear(-30.0) == Approx(1e-3).epsilon(1e-12));
  CHECK(db_to_linear(0.0) == 1.0);

  for (double db = -140.0; db <= 20.0; db += 7.3) {
    CHECK(linear_to_db(db_to_linear(db)) == Approx(db).epsilon(1e-12));
  }
}

TEST_CASE("gain_at wraps cyclically") {
  ChannelTrace trace;
  trace.gains_db = {0.0, -30.0, -60.0};
  CHECK(gain_at(trace, 0) == 1.0);
  CHECK(gain_at(trace, 1) == Approx(1e-3));
  CHECK(gain_at(trace, 3) == gain_at(trace, 0));
  CHECK(gain_at(trace, 302) == gain_at(trace, 2));

  ChannelTrace unit;
  unit.gains_db = {0.0};
  for (std::size_t i = 0; i < 10; ++i) CHECK(gain_at(unit, i) == 1.0);
}

TEST_CASE("synth_trace semantics") {
  // No fading, no blockage: constant at the mean.
  const ChannelTrace flat = synth_trace(16, -95.0, 0.0, 0.0, 20.0, 3);
  for (const double g : flat.gains_db) CHECK(g == -95.0);

  // Same seed twice: identical traces.
  const ChannelTrace a = synth_trace(64, -100.0, 3.0, 0.2, 18.0, 99);
  const ChannelTrace b = synth_trace(64, -100.0, 3.0, 0.2, 18.0, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.gains_db[i] == b.gains_db[i]);

  // Different seed: different trace.
  const ChannelTrace c = synth_trace(64, -100.0, 3.0, 0.2, 18.0, 100);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.size(); ++i) any_difference |= (a.gains_db[i] != c.gains_db[i]);
  CHECK(any_difference);

  // blockage_prob = 1: every frame attenuated by exactly the extra dB.
  const ChannelTrace blocked = synth_trace(32, -90.0, 0.0, 1.0, 25.0, 5);
  for (const double g : blocked.gains_db) CHECK(g == Approx(-115.0));
}

TEST_CASE("synth_trace round trips through save/load") {
  const ChannelTrace trace = synth_trace(45, -100.0, 4.0, 0.1, 20.0, 2024);
  const auto path = std::filesystem::temp_directory_path() / "splitedge_trace_rt.csv";
  save_trace(trace, path);
  const ChannelTrace reloaded = load_trace(path);
  REQUIRE(reloaded.size() == trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(reloaded.gains_db[i] == trace.gains_db[i]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("bundled trace frame 0 is the -96.2 dB anchor") {
  const ChannelTrace trace = load_trace(splitedge::testing::repo_root() /
                                        "traces/outdoor_blockage.csv");
  CHECK(trace.size() == 45);
  CHECK(trace.gains_db[0] == -96.2);
}
