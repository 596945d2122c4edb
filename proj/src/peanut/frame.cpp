#include "peanut/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "peanut/errors.hpp"

namespace peanut {

namespace {
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
}

const char* role_name(ColumnRole r) {
  switch (r) {
    case ColumnRole::target: return "target";
    case ColumnRole::feature: return "feature";
    case ColumnRole::ignored: return "ignored";
  }
  return "feature";
}

ColumnRole role_from_name(const std::string& name) {
  if (name == "target") return ColumnRole::target;
  if (name == "feature") return ColumnRole::feature;
  if (name == "ignored") return ColumnRole::ignored;
  fail(Errc::parse_error, "unknown column role '" + name + "'");
}

size_t MaskedSeries::observed_count() const {
  size_t n = 0;
  for (uint8_t m : mask) n += m ? 1 : 0;
  return n;
}

ObservationFrame ObservationFrame::build(std::vector<CalendarDate> dates,
                                         std::vector<ColumnSpec> columns) {
  for (size_t i = 0; i < dates.size(); ++i) {
    if (!dates[i].valid())
      fail(Errc::parse_error, "invalid date at row " + std::to_string(i));
    if (i > 0) {
      if (dates[i] == dates[i - 1])
        fail(Errc::duplicate_date, dates[i].iso() + " appears twice");
      if (dates[i] < dates[i - 1])
        fail(Errc::unsorted_dates,
             dates[i].iso() + " follows " + dates[i - 1].iso());
    }
  }

  ObservationFrame frame;
  frame.dates_ = std::move(dates);
  for (auto& spec : columns) {
    if (spec.values.size() != frame.dates_.size())
      fail(Errc::length_mismatch,
           "column '" + spec.name + "' has " +
               std::to_string(spec.values.size()) + " values for " +
               std::to_string(frame.dates_.size()) + " dates");
    if (!spec.mask.empty() && spec.mask.size() != spec.values.size())
      fail(Errc::length_mismatch,
           "mask length differs from values in column '" + spec.name + "'");
    if (std::find(frame.names_.begin(), frame.names_.end(), spec.name) !=
        frame.names_.end())
      fail(Errc::column_name_clash, "column '" + spec.name + "' repeated");

    Column col;
    col.name = spec.name;
    col.role = spec.role;
    col.values = std::move(spec.values);
    if (spec.mask.empty()) {
      col.mask.resize(col.values.size());
      for (size_t i = 0; i < col.values.size(); ++i)
        col.mask[i] = std::isnan(col.values[i]) ? 0 : 1;
    } else {
      col.mask = std::move(spec.mask);
    }
    for (size_t i = 0; i < col.values.size(); ++i)
      if (!col.mask[i]) col.values[i] = kMissing;

    frame.names_.push_back(col.name);
    frame.columns_.push_back(std::move(col));
  }
  return frame;
}

bool ObservationFrame::has_column(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

size_t ObservationFrame::column_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) fail(Errc::unknown_column, "'" + name + "'");
  return size_t(it - names_.begin());
}

const ObservationFrame::Column& ObservationFrame::col(
    const std::string& name) const {
  return columns_[column_index(name)];
}

ColumnRole ObservationFrame::role(const std::string& name) const {
  return col(name).role;
}

const std::vector<double>& ObservationFrame::values(
    const std::string& name) const {
  return col(name).values;
}

const std::vector<uint8_t>& ObservationFrame::mask(
    const std::string& name) const {
  return col(name).mask;
}

bool ObservationFrame::observed(size_t row, const std::string& name) const {
  return col(name).mask.at(row) != 0;
}

double ObservationFrame::value(size_t row, const std::string& name) const {
  return col(name).values.at(row);
}

std::vector<double> ObservationFrame::observed_values(const std::string& name) const {
  const Column& c = col(name);
  std::vector<double> out;
  out.reserve(c.values.size());
  for (size_t i = 0; i < c.values.size(); ++i)
    if (c.mask[i]) out.push_back(c.values[i]);
  return out;
}

ObservationFrame ObservationFrame::with_series(const std::string& name,
                                               MaskedSeries series) const {
  if (series.values.size() != rows() || series.mask.size() != rows())
    fail(Errc::length_mismatch, "replacement series for '" + name + "'");
  ObservationFrame out = *this;
  Column& c = out.columns_[column_index(name)];
  c.values = std::move(series.values);
  c.mask = std::move(series.mask);
  for (size_t i = 0; i < c.values.size(); ++i)
    if (!c.mask[i]) c.values[i] = kMissing;
  return out;
}

ObservationFrame ObservationFrame::with_column(ColumnSpec column) const {
  if (has_column(column.name))
    fail(Errc::column_name_clash, "column '" + column.name + "' already exists");
  ObservationFrame out = *this;
  std::vector<ColumnSpec> one;
  one.push_back(std::move(column));
  ObservationFrame wrapped = build(out.dates_, std::move(one));
  out.names_.push_back(wrapped.names_[0]);
  out.columns_.push_back(std::move(wrapped.columns_[0]));
  return out;
}

bool ObservationFrame::operator==(const ObservationFrame& other) const {
  if (dates_ != other.dates_ || names_ != other.names_) return false;
  for (size_t c = 0; c < columns_.size(); ++c) {
    const Column& a = columns_[c];
    const Column& b = other.columns_[c];
    if (a.name != b.name || a.role != b.role || a.mask != b.mask) return false;
    for (size_t i = 0; i < a.values.size(); ++i) {
      if (a.mask[i] && a.values[i] != b.values[i]) return false;
    }
  }
  return true;
}

ObservationFrame ObservationFrame::select_rows(
    const std::vector<size_t>& rows) const {
  ObservationFrame out;
  out.names_ = names_;
  out.dates_.reserve(rows.size());
  for (size_t r : rows) out.dates_.push_back(dates_.at(r));
  for (const Column& c : columns_) {
    Column sub;
    sub.name = c.name;
    sub.role = c.role;
    sub.values.reserve(rows.size());
    sub.mask.reserve(rows.size());
    for (size_t r : rows) {
      sub.values.push_back(c.values[r]);
      sub.mask.push_back(c.mask[r]);
    }
    out.columns_.push_back(std::move(sub));
  }
  return out;
}

MaskedSeries align_weekly_to_daily(
    const std::vector<CalendarDate>& daily,
    const std::vector<std::pair<CalendarDate, double>>& weekly) {
  std::map<CalendarDate, double> by_date;
  for (const auto& [date, value] : weekly) {
    if (!by_date.emplace(date, value).second)
      fail(Errc::duplicate_weekly_date, date.iso());
  }

  MaskedSeries out;
  out.values.assign(daily.size(), kMissing);
  out.mask.assign(daily.size(), 0);
  for (size_t i = 0; i < daily.size(); ++i) {
    auto it = by_date.find(daily[i]);
    if (it != by_date.end()) {
      out.values[i] = it->second;
      out.mask[i] = 1;
    }
  }
  return out;
}

ObservationFrame complete_rows(const ObservationFrame& frame,
                               const std::set<std::string>& required) {
  for (const auto& name : required)
    if (!frame.has_column(name)) fail(Errc::unknown_column, "'" + name + "'");
  if (required.empty()) return frame;

  std::vector<size_t> keep;
  for (size_t r = 0; r < frame.rows(); ++r) {
    bool all = true;
    for (const auto& name : required)
      if (!frame.observed(r, name)) { all = false; break; }
    if (all) keep.push_back(r);
  }
  return frame.select_rows(keep);
}

}  // namespace peanut
