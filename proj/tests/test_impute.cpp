#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "peanut/errors.hpp"
#include "peanut/frame.hpp"
#include "peanut/impute.hpp"
#include "peanut/ols.hpp"
#include "peanut/rng.hpp"
#include "test_support.hpp"

using namespace peanut;
using testsup::day_range;
using testsup::raises;

namespace {

ObservationFrame two_column_frame(const std::vector<double>& y,
                                  const std::vector<double>& x,
                                  const std::vector<uint8_t>& x_mask) {
  auto dates = day_range({2020, 1, 1}, y.size());
  return ObservationFrame::build(
      dates, {ColumnSpec{"y", y, {}, ColumnRole::feature},
              ColumnSpec{"x", x, x_mask, ColumnRole::target}});
}

}  // namespace

TEST_CASE("global mean fills gaps with the observed mean") {
  MaskedSeries s{{1.0, 0.0, 3.0}, {1, 0, 1}};
  CHECK(global_mean_impute(s) == std::vector<double>{1.0, 2.0, 3.0});

  MaskedSeries full{{4.0, 5.0}, {1, 1}};
  CHECK(global_mean_impute(full) == std::vector<double>{4.0, 5.0});

  CHECK(raises(Errc::no_observed_values, [] {
    global_mean_impute(MaskedSeries{{1.0, 2.0}, {0, 0}});
  }));
  CHECK(raises(Errc::length_mismatch, [] {
    global_mean_impute(MaskedSeries{{1.0, 2.0}, {1}});
  }));
}

TEST_CASE("monte carlo reproduces its documented per-cell stream") {
  MaskedSeries s{{2.0, 0.0, 4.0, 0.0, 9.0}, {1, 0, 1, 0, 1}};
  const int64_t draws = 25;
  const uint64_t seed = 314;
  auto filled = monte_carlo_impute(s, draws, seed);

  // observed cells pass through untouched
  CHECK(filled[0] == 2.0);
  CHECK(filled[2] == 4.0);
  CHECK(filled[4] == 9.0);

  const double mean = 5.0;
  const double sd = std::sqrt(((2 - 5.) * (2 - 5.) + (4 - 5.) * (4 - 5.) +
                               (9 - 5.) * (9 - 5.)) / 2.0);
  for (size_t r : {size_t(1), size_t(3)}) {
    RngStream rng(derive_seed(seed, r));
    double sum = 0.0;
    for (int64_t d = 0; d < draws; ++d) sum += rng.normal(mean, sd);
    CHECK(filled[r] == sum / double(draws));
  }

  // stable per seed, different across seeds
  CHECK(monte_carlo_impute(s, draws, seed) == filled);
  CHECK(monte_carlo_impute(s, draws, seed + 1) != filled);
  CHECK(monte_carlo_impute(s, draws + 1, seed) != filled);
}

TEST_CASE("monte carlo with zero spread fills the constant") {
  MaskedSeries s{{3.0, 3.0, 0.0, 3.0}, {1, 1, 0, 1}};
  auto filled = monte_carlo_impute(s, 10, 77);
  CHECK(filled[2] == 3.0);
}

TEST_CASE("monte carlo averages concentrate around the mean") {
  RngStream rng(555);
  const size_t n = 240;
  MaskedSeries s;
  s.values.resize(n);
  s.mask.resize(n);
  for (size_t i = 0; i < n; ++i) {
    s.mask[i] = i % 6 != 5;  // 40 missing cells
    s.values[i] = s.mask[i] ? rng.normal(10.0, 2.0) : 0.0;
  }
  double mean = 0.0, count = 0.0;
  for (size_t i = 0; i < n; ++i)
    if (s.mask[i]) {
      mean += s.values[i];
      count += 1.0;
    }
  mean /= count;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i)
    if (s.mask[i]) ss += (s.values[i] - mean) * (s.values[i] - mean);
  const double sd = std::sqrt(ss / (count - 1.0));

  const int64_t draws = 10000;
  auto filled = monte_carlo_impute(s, draws, 2024);
  size_t cells = 0, within = 0;
  for (size_t i = 0; i < n; ++i) {
    if (s.mask[i]) continue;
    ++cells;
    within += std::abs(filled[i] - mean) <= 5.0 * sd / std::sqrt(double(draws)) ? 1 : 0;
  }
  CHECK(cells == 40);
  CHECK(double(within) >= 0.99 * double(cells));
}

TEST_CASE("monte carlo needs data and sane draws") {
  CHECK(raises(Errc::no_observed_values, [] {
    monte_carlo_impute(MaskedSeries{{0.0, 0.0}, {0, 0}}, 10, 1);
  }));
  CHECK(raises(Errc::no_observed_values, [] {
    monte_carlo_impute(MaskedSeries{{1.0, 0.0}, {1, 0}}, 10, 1);
  }));
  CHECK(raises(Errc::validation_error, [] {
    monte_carlo_impute(MaskedSeries{{1.0, 2.0, 0.0}, {1, 1, 0}}, 0, 1);
  }));
}

TEST_CASE("strategy names parse including aliases") {
  CHECK(strategy_from_name("passthrough") == StrategyKind::passthrough);
  CHECK(strategy_from_name("drop_missing") == StrategyKind::drop_missing);
  CHECK(strategy_from_name("drop") == StrategyKind::drop_missing);
  CHECK(strategy_from_name("global_mean") == StrategyKind::global_mean);
  CHECK(strategy_from_name("mean") == StrategyKind::global_mean);
  CHECK(strategy_from_name("monte_carlo") == StrategyKind::monte_carlo);
  CHECK(strategy_from_name("mc") == StrategyKind::monte_carlo);
  CHECK(strategy_from_name("model_based") == StrategyKind::model_based);
  CHECK(strategy_from_name("model") == StrategyKind::model_based);
  CHECK(raises(Errc::validation_error, [] { strategy_from_name("magic"); }));
  for (StrategyKind k : {StrategyKind::passthrough, StrategyKind::drop_missing,
                         StrategyKind::global_mean, StrategyKind::monte_carlo,
                         StrategyKind::model_based}) {
    CHECK(strategy_from_name(strategy_name(k)) == k);
  }
}

TEST_CASE("passthrough keeps the frame and tags the gaps") {
  ObservationFrame f =
      two_column_frame({1.0, 2.0, 3.0}, {5.0, 0.0, 7.0}, {1, 0, 1});
  ImputationStrategy strat;
  strat.kind = StrategyKind::passthrough;
  HybridFrame h = impute(f, "x", strat);

  CHECK(h.frame == f);
  CHECK(h.target == "x");
  CHECK(h.strategy == std::string("passthrough"));
  CHECK(h.provenance == std::vector<CellProvenance>{CellProvenance::real,
                                                    CellProvenance::missing,
                                                    CellProvenance::real});
  CHECK(h.synthetic_count() == 0);
  CHECK(h.unfilled_rows.empty());
}

TEST_CASE("drop_missing keeps only rows with the target observed") {
  ObservationFrame f =
      two_column_frame({1.0, 2.0, 3.0, 4.0}, {5.0, 0.0, 7.0, 0.0}, {1, 0, 1, 0});
  ImputationStrategy strat;
  strat.kind = StrategyKind::drop_missing;
  HybridFrame h = impute(f, "x", strat);

  CHECK(h.frame.rows() == 2);
  CHECK(h.frame == complete_rows(f, {"x"}));
  CHECK(h.provenance ==
        std::vector<CellProvenance>{CellProvenance::real, CellProvenance::real});
  CHECK(h.synthetic_count() == 0);
}

TEST_CASE("global_mean imputation yields a fully observed target") {
  ObservationFrame f =
      two_column_frame({1.0, 2.0, 3.0}, {5.0, 0.0, 7.0}, {1, 0, 1});
  ImputationStrategy strat;
  strat.kind = StrategyKind::global_mean;
  HybridFrame h = impute(f, "x", strat);

  CHECK(h.frame.mask("x") == std::vector<uint8_t>{1, 1, 1});
  CHECK(h.frame.value(1, "x") == 6.0);
  CHECK(h.frame.value(0, "x") == 5.0);
  CHECK(h.provenance[1] == CellProvenance::synthetic);
  CHECK(h.provenance[0] == CellProvenance::real);
  CHECK(h.synthetic_count() == 1);
  // untouched columns stay identical
  CHECK(h.frame.values("y") == f.values("y"));
}

TEST_CASE("monte_carlo imputation honors the strategy seed") {
  ObservationFrame f = two_column_frame({1.0, 2.0, 3.0, 4.0, 5.0},
                                        {2.0, 0.0, 4.0, 0.0, 9.0}, {1, 0, 1, 0, 1});
  ImputationStrategy strat;
  strat.kind = StrategyKind::monte_carlo;
  strat.draws = 25;
  strat.seed = 314;
  HybridFrame h = impute(f, "x", strat);

  MaskedSeries s{f.values("x"), f.mask("x")};
  auto expected = monte_carlo_impute(s, 25, 314);
  CHECK(h.frame.values("x") == expected);
  CHECK(h.synthetic_count() == 2);
  CHECK(h.strategy == std::string("monte_carlo"));
}

TEST_CASE("model_based fills from features and reports unfillable rows") {
  // x == 2*y exactly; row 3 misses the target, row 4 misses both
  auto dates = day_range({2020, 1, 1}, 10);
  std::vector<double> y, x;
  std::vector<uint8_t> ymask(10, 1), xmask(10, 1);
  for (int i = 0; i < 10; ++i) {
    y.push_back(double(i));
    x.push_back(2.0 * double(i));
  }
  xmask[3] = 0;
  xmask[4] = 0;
  ymask[4] = 0;
  ObservationFrame f = ObservationFrame::build(
      dates, {ColumnSpec{"y", y, ymask, ColumnRole::feature},
              ColumnSpec{"x", x, xmask, ColumnRole::target}});

  ImputationStrategy strat;
  strat.kind = StrategyKind::model_based;
  strat.seed = 5;
  strat.hyper.n_trees = 30;
  HybridFrame h = impute(f, "x", strat);

  CHECK(h.provenance[3] == CellProvenance::synthetic);
  CHECK(h.provenance[4] == CellProvenance::missing);
  CHECK(h.unfilled_rows == std::vector<size_t>{4});
  CHECK(h.frame.observed(3, "x"));
  CHECK_FALSE(h.frame.observed(4, "x"));

  // the fill is a mean of observed targets near y=3, so it stays in range
  CHECK(h.frame.value(3, "x") >= 0.0);
  CHECK(h.frame.value(3, "x") <= 18.0);
  // neighbors 2 and... the tree isolates rows, so the fill tracks the trend
  CHECK(std::abs(h.frame.value(3, "x") - 6.0) <= 4.0);

  // determinism
  HybridFrame h2 = impute(f, "x", strat);
  CHECK(h2.frame == h.frame);
}

TEST_CASE("model_based with nothing to fill changes nothing") {
  ObservationFrame f =
      two_column_frame({1.0, 2.0, 3.0}, {5.0, 6.0, 7.0}, {1, 1, 1});
  HybridFrame h = model_based_impute(f, "x", {"y"}, ForestHyper{}, 1);
  CHECK(h.frame == f);
  CHECK(h.synthetic_count() == 0);
  CHECK(h.unfilled_rows.empty());
}

TEST_CASE("model_based validates its feature set") {
  ObservationFrame f =
      two_column_frame({1.0, 2.0, 3.0}, {5.0, 0.0, 7.0}, {1, 0, 1});
  CHECK(raises(Errc::validation_error, [&] {
    model_based_impute(f, "x", {}, ForestHyper{}, 1);
  }));
  CHECK(raises(Errc::validation_error, [&] {
    model_based_impute(f, "x", {"x"}, ForestHyper{}, 1);
  }));
  CHECK(raises(Errc::unknown_column, [&] {
    model_based_impute(f, "x", {"zz"}, ForestHyper{}, 1);
  }));
}

TEST_CASE("model_based needs at least two complete training rows") {
  ObservationFrame f =
      two_column_frame({1.0, 2.0, 3.0}, {5.0, 0.0, 0.0}, {1, 0, 0});
  CHECK(raises(Errc::insufficient_training_rows, [&] {
    model_based_impute(f, "x", {"y"}, ForestHyper{}, 1);
  }));
}

TEST_CASE("imputing the regressor mean preserves the fitted slope") {
  RngStream rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t n = 40;
    std::vector<double> y(n), x(n);
    std::vector<uint8_t> xmask(n, 1);
    size_t missing = 0;
    for (size_t i = 0; i < n; ++i) {
      x[i] = rng.normal(0.0, 1.5);
      y[i] = 0.7 - 1.3 * x[i] + rng.normal(0.0, 0.8);
      if (rng.uniform01() < 0.4 && missing + 2 < n) {
        xmask[i] = 0;
        ++missing;
      }
    }
    if (missing < 2) continue;

    // complete-case fit
    std::vector<double> yc, xc;
    for (size_t i = 0; i < n; ++i) {
      if (xmask[i]) {
        yc.push_back(y[i]);
        xc.push_back(x[i]);
      }
    }
    OlsFit cc = fit_ols(yc, {xc}, {"x"});

    // mean-imputed fit over every row
    auto filled = global_mean_impute(MaskedSeries{x, xmask});
    OlsFit mi = fit_ols(y, {filled}, {"x"});

    CHECK(std::abs(mi.coef[1] - cc.coef[1]) <= 1e-10 * std::abs(cc.coef[1]));

    // the intercept absorbs exactly the shift in the response mean
    double mean_all = 0.0, mean_obs = 0.0;
    for (double v : y) mean_all += v;
    mean_all /= double(n);
    for (double v : yc) mean_obs += v;
    mean_obs /= double(yc.size());
    CHECK(mi.coef[0] - cc.coef[0] ==
          doctest::Approx(mean_all - mean_obs).epsilon(1e-8));
  }
}

TEST_CASE("imputation requires a known target") {
  ObservationFrame f =
      two_column_frame({1.0, 2.0, 3.0}, {5.0, 0.0, 7.0}, {1, 0, 1});
  ImputationStrategy strat;
  strat.kind = StrategyKind::global_mean;
  CHECK(raises(Errc::unknown_column, [&] { impute(f, "nope", strat); }));
}
