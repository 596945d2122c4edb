#pragma once

#include <map>
#include <string>
#include <vector>

#include "peanut/frame.hpp"

namespace peanut {

enum class Frequency { daily, weekly };

const char* frequency_name(Frequency f);
Frequency frequency_from_name(const std::string& name);

struct ColumnMapEntry {
  std::string name;  // canonical name in the frame
  ColumnRole role = ColumnRole::feature;
};

struct SourceSpec {
  std::string path;
  Frequency frequency = Frequency::daily;
  // Either three integer columns (year, month, day) or one ISO-date column.
  std::vector<std::string> date_columns = {"year", "month", "day"};
  std::map<std::string, ColumnMapEntry> columns;  // source header -> mapping
  std::string missing_token = ".";
};

/// One frame row per CSV row, sorted by date. A cell is missing when its
/// text is empty or equals the missing token; anything else must be a plain
/// signed decimal (scientific notation rejected).
ObservationFrame parse_tracker_csv(const SourceSpec& spec);

/// Daily frame carried through unchanged; weekly columns spread over the
/// daily dates via align_weekly_to_daily.
ObservationFrame merge_sources(const ObservationFrame& daily, const ObservationFrame& weekly);

}  // namespace peanut
