#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "peanut/frame.hpp"

namespace peanut {

/// Per-column summary statistics over observed cells. Fields other than
/// count are NaN when no cell is observed; std is NaN below two cells.
struct ColumnStats {
  std::string name;
  int64_t count = 0;
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double p25 = 0.0;
  double p50 = 0.0;
  double p75 = 0.0;
  double max = 0.0;
};

struct DescriptiveStats {
  std::vector<ColumnStats> columns;
};

struct ColumnMissingness {
  std::string name;
  int64_t observed = 0;
  int64_t missing = 0;
  double fraction = 0.0;          // missing / rows, 0 for an empty frame
  std::vector<uint8_t> bitmap;    // 1 = observed, date order
};

struct MissingnessSummary {
  int64_t rows = 0;
  std::vector<ColumnMissingness> columns;
};

/// Quantile by linear interpolation between order statistics at rank
/// h = (n-1)p. values must be sorted ascending and non-empty.
double quantile_linear(const std::vector<double>& sorted, double p);

DescriptiveStats descriptive_stats(const ObservationFrame& frame);

MissingnessSummary missingness_summary(const ObservationFrame& frame);

/// Observed (date, value) points of one column, date ascending.
std::vector<std::pair<std::string, double>> scatter_export(const ObservationFrame& frame,
                                                           const std::string& column);

/// Aligned table, statistics as rows and columns as columns, all cells at
/// three decimals.
std::string render_stats_table(const DescriptiveStats& stats);

std::string render_missingness_table(const MissingnessSummary& summary);

/// Structured exports (JSON text).
std::string stats_json(const DescriptiveStats& stats);
std::string missingness_json(const MissingnessSummary& summary);
std::string scatter_json(const std::vector<std::pair<std::string, double>>& points,
                         const std::string& column);

}  // namespace peanut
