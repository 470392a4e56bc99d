#pragma once

#include <array>
#include <cctype>
#include <string>

#include "recip/error.hpp"

namespace recip {

// Weekday indices follow ISO order: 0=Mon .. 5=Sat, 6=Sun.
enum class Weekday : int {
  kMonday = 0,
  kTuesday = 1,
  kWednesday = 2,
  kThursday = 3,
  kFriday = 4,
  kSaturday = 5,
  kSunday = 6,
};

// Day index 0 of the reference corpus is 2007-10-31, a Wednesday.
inline constexpr int kDefaultAnchorWeekday = static_cast<int>(Weekday::kWednesday);

inline int day_of_week(long day, int anchor_weekday) {
  if (anchor_weekday < 0 || anchor_weekday > 6)
    throw ValidationError("anchor weekday must be in 0..6");
  if (day < 0) throw ValidationError("day index must be nonnegative");
  return static_cast<int>((anchor_weekday + day) % 7);
}

inline bool is_weekend(long day, int anchor_weekday) {
  const int w = day_of_week(day, anchor_weekday);
  return w == static_cast<int>(Weekday::kSaturday) ||
         w == static_cast<int>(Weekday::kSunday);
}

inline const std::string& weekday_name(int w) {
  static const std::array<std::string, 7> names = {
      "Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};
  if (w < 0 || w > 6) throw ValidationError("weekday index must be in 0..6");
  return names[static_cast<std::size_t>(w)];
}

// Accepts "wed", "Wednesday", or "2".
inline int parse_weekday(const std::string& text) {
  if (text.size() == 1 && text[0] >= '0' && text[0] <= '6') return text[0] - '0';
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  static const std::array<std::string, 7> prefixes = {
      "mon", "tue", "wed", "thu", "fri", "sat", "sun"};
  for (int i = 0; i < 7; ++i) {
    if (lower.rfind(prefixes[static_cast<std::size_t>(i)], 0) == 0) return i;
  }
  throw ValidationError("unrecognized weekday: " + text);
}

}  // namespace recip
