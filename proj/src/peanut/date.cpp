#include "peanut/date.hpp"

#include <chrono>
#include <cstdio>

#include "peanut/errors.hpp"

namespace peanut {

namespace {

std::chrono::year_month_day to_ymd(const CalendarDate& d) {
  return std::chrono::year_month_day(std::chrono::year(d.year),
                                     std::chrono::month(unsigned(d.month)),
                                     std::chrono::day(unsigned(d.day)));
}

}  // namespace

bool CalendarDate::valid() const {
  if (month < 1 || month > 12 || day < 1 || day > 31) return false;
  return to_ymd(*this).ok();
}

std::string CalendarDate::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

CalendarDate CalendarDate::from_iso(const std::string& text) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3)
    fail(Errc::parse_error, "expected YYYY-MM-DD, got '" + text + "'");
  CalendarDate date{y, m, d};
  if (!date.valid())
    fail(Errc::parse_error, "not a calendar date: '" + text + "'");
  return date;
}

CalendarDate CalendarDate::next() const {
  using namespace std::chrono;
  year_month_day ymd{sys_days(to_ymd(*this)) + days(1)};
  return CalendarDate{int(ymd.year()), int(unsigned(ymd.month())),
                      int(unsigned(ymd.day()))};
}

}  // namespace peanut
