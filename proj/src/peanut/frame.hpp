#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "peanut/date.hpp"

namespace peanut {

enum class ColumnRole { target, feature, ignored };

const char* role_name(ColumnRole r);
ColumnRole role_from_name(const std::string& name);

/// A value vector plus its observation mask. mask[i] == 0 means the slot is
/// the missing sentinel (a quiet NaN) and numeric code must not read it.
struct MaskedSeries {
  std::vector<double> values;
  std::vector<uint8_t> mask;

  size_t observed_count() const;
};

struct ColumnSpec {
  std::string name;
  std::vector<double> values;
  // Optional; when empty the mask is derived from NaN markers in values.
  std::vector<uint8_t> mask;
  ColumnRole role = ColumnRole::feature;
};

/// Date-indexed table of named numeric columns with per-cell missingness.
/// Frames are immutable once built; "edits" return new frames.
class ObservationFrame {
 public:
  ObservationFrame() = default;

  /// Validates lengths, strict date ordering, and unique column names, then
  /// normalizes masked slots to the NaN sentinel.
  static ObservationFrame build(std::vector<CalendarDate> dates,
                                std::vector<ColumnSpec> columns);

  size_t rows() const { return dates_.size(); }
  size_t column_count() const { return names_.size(); }
  const std::vector<CalendarDate>& dates() const { return dates_; }
  const std::vector<std::string>& column_names() const { return names_; }

  bool has_column(const std::string& name) const;
  size_t column_index(const std::string& name) const;  // throws unknown_column

  ColumnRole role(const std::string& name) const;
  const std::vector<double>& values(const std::string& name) const;
  const std::vector<uint8_t>& mask(const std::string& name) const;

  bool observed(size_t row, const std::string& name) const;
  double value(size_t row, const std::string& name) const;

  /// Observed cells of one column, dense, in date order.
  std::vector<double> observed_values(const std::string& name) const;

  /// Copy with one column's data replaced (same length; role preserved).
  ObservationFrame with_series(const std::string& name,
                               MaskedSeries series) const;

  /// Copy with a column appended.
  ObservationFrame with_column(ColumnSpec column) const;

  /// Copy restricted to the given row indices (must be increasing).
  ObservationFrame select_rows(const std::vector<size_t>& rows) const;

  /// Structural: same dates, names, roles, masks, and observed values.
  /// Masked slots are ignored (their NaN sentinels never compare equal).
  bool operator==(const ObservationFrame& other) const;
  bool operator!=(const ObservationFrame& other) const { return !(*this == other); }

 private:
  struct Column {
    std::string name;
    ColumnRole role;
    std::vector<double> values;
    std::vector<uint8_t> mask;
  };

  std::vector<CalendarDate> dates_;
  std::vector<std::string> names_;  // column order, fixed at build time
  std::vector<Column> columns_;

  const Column& col(const std::string& name) const;
};

/// Spreads weekly records over a daily index: a slot is observed exactly
/// when a weekly record carries that date; weekly records outside the daily
/// range are dropped. Duplicated weekly dates are an error.
MaskedSeries align_weekly_to_daily(
    const std::vector<CalendarDate>& daily,
    const std::vector<std::pair<CalendarDate, double>>& weekly);

/// Rows where every required column is observed, in original order.
/// An empty requirement returns the frame unchanged.
ObservationFrame complete_rows(const ObservationFrame& frame,
                               const std::set<std::string>& required);

}  // namespace peanut
