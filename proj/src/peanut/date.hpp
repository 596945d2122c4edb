#pragma once

#include <compare>
#include <string>

namespace peanut {

/// A Gregorian calendar day. Ordering is plain calendar order; the library
/// never does time-zone or intra-day work.
struct CalendarDate {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const CalendarDate&) const = default;

  bool valid() const;
  std::string iso() const;  // YYYY-MM-DD

  /// Parses "YYYY-MM-DD". Throws Errc::parse_error on malformed or
  /// non-existent dates.
  static CalendarDate from_iso(const std::string& text);

  /// The following calendar day (used by the simulator to lay out spans).
  CalendarDate next() const;
};

}  // namespace peanut
