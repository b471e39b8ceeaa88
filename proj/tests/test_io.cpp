#include <doctest.h>

#include <sstream>

#include "evenfill/errors.hpp"
#include "evenfill/experiments.hpp"
#include "evenfill/greedy.hpp"
#include "evenfill/io.hpp"

using namespace evenfill;

TEST_CASE("point files round-trip values and annotations") {
  const auto [set, trace] = extend(paper_seed(), 20, GridKind::EndGrid);
  (void)trace;
  std::ostringstream out;
  write_point_set(out, set);

  std::istringstream in(out.str());
  const auto points = read_points(in);
  REQUIRE(points.size() == set.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(points[i].value == set.value(i));
    CHECK(points[i].rational.num == set.rational(i).num);
    CHECK(points[i].rational.den == set.rational(i).den);
  }
}

TEST_CASE("point files accept comments and reject garbage") {
  std::istringstream good("# header comment\n0.25 1/4\n\n0.75\n");
  const auto points = read_points(good);
  REQUIRE(points.size() == 2);
  CHECK(points[0].rational.den == 4);
  CHECK(!points[1].rational.present());

  std::istringstream bad_value("hello\n");
  CHECK_THROWS_AS(read_points(bad_value), ConfigError);
  std::istringstream bad_ratio("0.5 1:2\n");
  CHECK_THROWS_AS(read_points(bad_ratio), ConfigError);
}

TEST_CASE("trace csv round trip") {
  const auto [set, trace] = extend(paper_seed(), 15, GridKind::EndGrid);
  (void)set;
  std::ostringstream out;
  write_trace_csv(out, trace);
  std::istringstream in(out.str());
  const EnergyTrace back = read_trace_csv(in);
  REQUIRE(back.entries.size() == trace.entries.size());
  CHECK(back.start_size == trace.start_size);
  for (std::size_t i = 0; i < back.entries.size(); ++i) {
    CHECK(back.entries[i].n == trace.entries[i].n);
    CHECK(back.entries[i].chosen == trace.entries[i].chosen);
    CHECK(back.entries[i].energy == trace.entries[i].energy);
  }
  std::istringstream headerless("1,0.5,0.25\n");
  CHECK_THROWS_AS(read_trace_csv(headerless), ConfigError);
}

TEST_CASE("formatted doubles survive a parse round trip") {
  for (double x : {1.0 / 3.0, 0.1, 1e-15, 0.9999999999999999}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}
