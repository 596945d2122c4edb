#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "peanut/describe.hpp"
#include "peanut/errors.hpp"
#include "peanut/frame.hpp"
#include "test_support.hpp"

using namespace peanut;
using testsup::collapse_ws;
using testsup::day_range;
using testsup::lines_of;
using testsup::raises;

TEST_CASE("quantiles interpolate between order statistics") {
  const std::vector<double> three{1.0, 2.0, 3.0};
  CHECK(quantile_linear(three, 0.0) == 1.0);
  CHECK(quantile_linear(three, 0.25) == doctest::Approx(1.5));
  CHECK(quantile_linear(three, 0.5) == 2.0);
  CHECK(quantile_linear(three, 0.75) == doctest::Approx(2.5));
  CHECK(quantile_linear(three, 1.0) == 3.0);

  const std::vector<double> four{1.0, 2.0, 3.0, 4.0};
  CHECK(quantile_linear(four, 0.25) == doctest::Approx(1.75));
  CHECK(quantile_linear(four, 0.5) == doctest::Approx(2.5));
  CHECK(quantile_linear(four, 0.75) == doctest::Approx(3.25));

  CHECK(quantile_linear({7.0}, 0.37) == 7.0);
  CHECK(raises(Errc::empty_input, [] { quantile_linear({}, 0.5); }));
}

TEST_CASE("stats summarize observed cells only") {
  auto dates = day_range({2020, 1, 1}, 3);
  ObservationFrame f = ObservationFrame::build(
      dates, {ColumnSpec{"a", {1.0, 2.0, 3.0}},
              ColumnSpec{"b", {5.0, 99.0, 7.0}, {1, 0, 1}},
              ColumnSpec{"c", {0.0, 0.0, 0.0}, {0, 0, 0}}});

  DescriptiveStats stats = descriptive_stats(f);
  REQUIRE(stats.columns.size() == 3);

  const ColumnStats& a = stats.columns[0];
  CHECK(a.count == 3);
  CHECK(a.mean == doctest::Approx(2.0));
  CHECK(a.std == doctest::Approx(1.0));
  CHECK(a.min == 1.0);
  CHECK(a.p25 == doctest::Approx(1.5));
  CHECK(a.p50 == 2.0);
  CHECK(a.p75 == doctest::Approx(2.5));
  CHECK(a.max == 3.0);

  const ColumnStats& b = stats.columns[1];
  CHECK(b.count == 2);
  CHECK(b.mean == doctest::Approx(6.0));
  CHECK(b.std == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.max == 7.0);

  const ColumnStats& c = stats.columns[2];
  CHECK(c.count == 0);
  CHECK(std::isnan(c.mean));
  CHECK(std::isnan(c.max));
}

TEST_CASE("a single observation has no spread") {
  auto dates = day_range({2020, 1, 1}, 2);
  ObservationFrame f =
      ObservationFrame::build(dates, {ColumnSpec{"a", {4.0, 0.0}, {1, 0}}});
  const ColumnStats& a = descriptive_stats(f).columns[0];
  CHECK(a.count == 1);
  CHECK(a.mean == 4.0);
  CHECK(std::isnan(a.std));
  CHECK(a.min == 4.0);
  CHECK(a.p50 == 4.0);
  CHECK(a.max == 4.0);
}

TEST_CASE("missingness summary counts and maps the gaps") {
  auto dates = day_range({2020, 1, 1}, 3);
  ObservationFrame f = ObservationFrame::build(
      dates, {ColumnSpec{"x", {1.0, 0.0, 3.0}, {1, 0, 1}},
              ColumnSpec{"y", {1.0, 2.0, 3.0}}});

  MissingnessSummary m = missingness_summary(f);
  CHECK(m.rows == 3);
  REQUIRE(m.columns.size() == 2);
  CHECK(m.columns[0].observed == 2);
  CHECK(m.columns[0].missing == 1);
  CHECK(m.columns[0].fraction == doctest::Approx(1.0 / 3.0));
  CHECK(m.columns[0].bitmap == std::vector<uint8_t>{1, 0, 1});
  CHECK(m.columns[1].missing == 0);
  CHECK(m.columns[1].fraction == 0.0);
}

TEST_CASE("scatter export lists observed points in date order") {
  auto dates = day_range({2020, 1, 30}, 4);
  ObservationFrame f = ObservationFrame::build(
      dates, {ColumnSpec{"v", {9.0, 8.0, 7.0, 6.0}, {1, 0, 0, 1}}});
  auto pts = scatter_export(f, "v");
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].first == "2020-01-30");
  CHECK(pts[0].second == 9.0);
  CHECK(pts[1].first == "2020-02-02");
  CHECK(pts[1].second == 6.0);
  CHECK(raises(Errc::unknown_column, [&] { scatter_export(f, "w"); }));
}

TEST_CASE("stats table puts statistics in rows and columns in columns") {
  auto dates = day_range({2020, 1, 1}, 3);
  ObservationFrame f = ObservationFrame::build(
      dates, {ColumnSpec{"alpha", {1.0, 2.0, 3.0}},
              ColumnSpec{"beta", {2.0, 4.0, 6.0}}});
  const std::string table = render_stats_table(descriptive_stats(f));
  auto lines = lines_of(table);

  bool saw_count = false, saw_mean = false, saw_q25 = false;
  for (const auto& line : lines) {
    const std::string c = collapse_ws(line);
    saw_count = saw_count || c == "count 3.000 3.000";
    saw_mean = saw_mean || c == "mean 2.000 4.000";
    saw_q25 = saw_q25 || c == "25% 1.500 3.000";
  }
  CHECK(saw_count);
  CHECK(saw_mean);
  CHECK(saw_q25);
  CHECK(collapse_ws(lines[0]).find("alpha beta") != std::string::npos);

  const std::vector<std::string> order{"count", "mean", "std", "min",
                                       "25%",   "50%",  "75%", "max"};
  size_t pos = 0;
  for (const auto& label : order) {
    const size_t at = table.find("\n" + label);
    CHECK(at != std::string::npos);
    CHECK(at >= pos);
    pos = at;
  }
}

TEST_CASE("missingness table reports rows and fractions") {
  auto dates = day_range({2020, 1, 1}, 4);
  ObservationFrame f = ObservationFrame::build(
      dates, {ColumnSpec{"x", {1.0, 0.0, 3.0, 0.0}, {1, 0, 1, 0}}});
  const std::string table = render_missingness_table(missingness_summary(f));
  CHECK(table.find("rows = 4") != std::string::npos);
  CHECK(table.find("0.5000") != std::string::npos);
  CHECK(table.find("x") != std::string::npos);
}

TEST_CASE("structured exports parse and carry the right kind") {
  auto dates = day_range({2020, 1, 1}, 3);
  ObservationFrame f = ObservationFrame::build(
      dates, {ColumnSpec{"a", {1.0, 2.0, 3.0}, {1, 0, 1}}});

  auto stats = nlohmann::json::parse(stats_json(descriptive_stats(f)));
  CHECK(stats.at("kind") == "descriptive_stats");
  CHECK(stats.at("columns").at("a").at("count") == 2);
  CHECK(stats.at("columns").at("a").at("mean") == doctest::Approx(2.0));

  auto missing = nlohmann::json::parse(missingness_json(missingness_summary(f)));
  CHECK(missing.at("kind") == "missingness_summary");
  CHECK(missing.at("rows") == 3);

  auto scatter = nlohmann::json::parse(scatter_json(scatter_export(f, "a"), "a"));
  CHECK(scatter.at("kind") == "scatter");
  CHECK(scatter.at("column") == "a");
  CHECK(scatter.at("points").size() == 2);
}
