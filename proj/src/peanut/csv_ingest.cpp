#include "peanut/csv_ingest.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>

#include "peanut/errors.hpp"

namespace peanut {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

bool plain_decimal(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  size_t digits = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
    ++i;
    ++digits;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      ++i;
      ++digits;
    }
  }
  return i == s.size() && digits > 0;
}

double parse_decimal(const std::string& text, size_t row, const std::string& column) {
  if (!plain_decimal(text)) {
    fail(Errc::unparsable_number,
         "row " + std::to_string(row) + ", column '" + column + "': '" + text + "'");
  }
  return std::strtod(text.c_str(), nullptr);
}

int parse_int(const std::string& text, size_t row, const std::string& column) {
  bool ok = !text.empty();
  size_t i = ok && (text[0] == '+' || text[0] == '-') ? 1 : 0;
  if (ok && i >= text.size()) ok = false;
  for (; ok && i < text.size(); ++i) ok = text[i] >= '0' && text[i] <= '9';
  if (!ok) {
    fail(Errc::unparsable_number,
         "row " + std::to_string(row) + ", column '" + column + "': '" + text + "'");
  }
  return std::atoi(text.c_str());
}

}  // namespace

const char* frequency_name(Frequency f) {
  return f == Frequency::daily ? "daily" : "weekly";
}

Frequency frequency_from_name(const std::string& name) {
  if (name == "daily") return Frequency::daily;
  if (name == "weekly") return Frequency::weekly;
  fail(Errc::validation_error, "unknown frequency '" + name + "'");
}

ObservationFrame parse_tracker_csv(const SourceSpec& spec) {
  if (spec.date_columns.size() != 3 && spec.date_columns.size() != 1) {
    fail(Errc::validation_error, "date_columns must name three integer columns or one ISO column");
  }
  {
    std::set<std::string> uniq(spec.date_columns.begin(), spec.date_columns.end());
    if (uniq.size() != spec.date_columns.size()) {
      fail(Errc::validation_error, "date_columns must be distinct");
    }
  }

  std::ifstream in(spec.path, std::ios::binary);
  if (!in) fail(Errc::file_not_found, spec.path);

  std::string line;
  if (!std::getline(in, line)) fail(Errc::parse_error, spec.path + " is empty");
  const std::vector<std::string> header = split_line(line);

  auto header_index = [&](const std::string& name) -> size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      fail(Errc::missing_header_column, "'" + name + "' not in header of " + spec.path);
    }
    return static_cast<size_t>(it - header.begin());
  };

  std::vector<size_t> date_idx;
  for (const auto& name : spec.date_columns) date_idx.push_back(header_index(name));
  std::vector<std::pair<size_t, ColumnMapEntry>> mapped;
  for (const auto& [src, entry] : spec.columns) mapped.emplace_back(header_index(src), entry);
  {
    std::set<std::string> uniq;
    for (const auto& [idx, entry] : mapped) {
      if (!uniq.insert(entry.name).second) {
        fail(Errc::validation_error, "canonical column '" + entry.name + "' mapped twice");
      }
    }
  }

  struct Row {
    CalendarDate date;
    std::vector<double> values;
    std::vector<uint8_t> mask;
  };
  std::vector<Row> rows;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size()) {
      fail(Errc::parse_error, spec.path + " row " + std::to_string(line_no) + " has " +
                                  std::to_string(cells.size()) + " cells, header has " +
                                  std::to_string(header.size()));
    }

    Row row;
    if (spec.date_columns.size() == 3) {
      row.date = CalendarDate{parse_int(cells[date_idx[0]], line_no, spec.date_columns[0]),
                              parse_int(cells[date_idx[1]], line_no, spec.date_columns[1]),
                              parse_int(cells[date_idx[2]], line_no, spec.date_columns[2])};
    } else {
      row.date = CalendarDate::from_iso(cells[date_idx[0]]);
    }
    if (!row.date.valid()) {
      fail(Errc::parse_error,
           spec.path + " row " + std::to_string(line_no) + ": invalid date " + row.date.iso());
    }

    for (const auto& [idx, entry] : mapped) {
      const std::string& text = cells[idx];
      if (text.empty() || text == spec.missing_token) {
        row.values.push_back(0.0);
        row.mask.push_back(0);
      } else {
        row.values.push_back(parse_decimal(text, line_no, entry.name));
        row.mask.push_back(1);
      }
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) fail(Errc::io_error, "reading " + spec.path);

  std::vector<size_t> order(rows.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return rows[a].date < rows[b].date; });
  for (size_t i = 1; i < order.size(); ++i) {
    if (rows[order[i - 1]].date == rows[order[i]].date) {
      fail(Errc::duplicate_date, spec.path + ": " + rows[order[i]].date.iso());
    }
  }

  std::vector<CalendarDate> dates;
  dates.reserve(rows.size());
  for (size_t i : order) dates.push_back(rows[i].date);

  std::vector<ColumnSpec> specs(mapped.size());
  for (size_t c = 0; c < mapped.size(); ++c) {
    specs[c].name = mapped[c].second.name;
    specs[c].role = mapped[c].second.role;
    specs[c].values.reserve(rows.size());
    specs[c].mask.reserve(rows.size());
    for (size_t i : order) {
      specs[c].values.push_back(rows[i].values[c]);
      specs[c].mask.push_back(rows[i].mask[c]);
    }
  }
  return ObservationFrame::build(std::move(dates), std::move(specs));
}

ObservationFrame merge_sources(const ObservationFrame& daily, const ObservationFrame& weekly) {
  for (const auto& name : weekly.column_names()) {
    if (daily.has_column(name)) {
      fail(Errc::column_name_clash, "column '" + name + "' appears in both sources");
    }
  }

  ObservationFrame merged = daily;
  for (const auto& name : weekly.column_names()) {
    const auto& values = weekly.values(name);
    const auto& mask = weekly.mask(name);
    std::vector<std::pair<CalendarDate, double>> observed;
    for (size_t i = 0; i < weekly.rows(); ++i) {
      if (mask[i]) observed.emplace_back(weekly.dates()[i], values[i]);
    }
    MaskedSeries aligned = align_weekly_to_daily(daily.dates(), observed);
    merged = merged.with_column(
        ColumnSpec{name, std::move(aligned.values), std::move(aligned.mask), weekly.role(name)});
  }
  return merged;
}

}  // namespace peanut
