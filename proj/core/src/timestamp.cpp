#include "evlog/timestamp.hpp"

#include <chrono>
#include <cstdio>

namespace evlog {

namespace {

namespace chr = std::chrono;

struct Fields {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;
  int millis = 0;
  int offset_minutes = 0;
};

std::optional<Timestamp> to_timestamp(const Fields& f) {
  const chr::year_month_day ymd{chr::year{f.year}, chr::month{f.month}, chr::day{f.day}};
  if (!ymd.ok()) return std::nullopt;
  if (f.hour > 23 || f.minute > 59 || f.second > 59) return std::nullopt;
  const auto days = chr::sys_days{ymd}.time_since_epoch();
  const auto total = chr::duration_cast<chr::milliseconds>(days) + chr::hours{f.hour} +
                     chr::minutes{f.minute - f.offset_minutes} + chr::seconds{f.second} +
                     chr::milliseconds{f.millis};
  return Timestamp{total.count()};
}

Fields to_fields(Timestamp t) {
  const chr::sys_time<chr::milliseconds> tp{chr::milliseconds{t.millis}};
  const auto day = chr::floor<chr::days>(tp);
  const chr::year_month_day ymd{day};
  const chr::hh_mm_ss hms{tp - day};
  Fields f;
  f.year = static_cast<int>(ymd.year());
  f.month = static_cast<unsigned>(ymd.month());
  f.day = static_cast<unsigned>(ymd.day());
  f.hour = static_cast<int>(hms.hours().count());
  f.minute = static_cast<int>(hms.minutes().count());
  f.second = static_cast<int>(hms.seconds().count());
  f.millis = static_cast<int>(hms.subseconds().count());
  return f;
}

bool read_digits(std::string_view text, std::size_t& pos, std::size_t width, int& out) {
  if (pos + width > text.size()) return false;
  int v = 0;
  for (std::size_t i = 0; i < width; ++i) {
    const char c = text[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  pos += width;
  out = v;
  return true;
}

bool starts_with(std::string_view s, std::size_t pos, std::string_view token) {
  return s.substr(pos, token.size()) == token;
}

std::optional<Timestamp> parse_iso(std::string_view text) {
  Fields f;
  std::size_t pos = 0;
  int v = 0;
  if (!read_digits(text, pos, 4, f.year)) return std::nullopt;
  if (pos >= text.size() || text[pos++] != '-') return std::nullopt;
  if (!read_digits(text, pos, 2, v)) return std::nullopt;
  f.month = static_cast<unsigned>(v);
  if (pos >= text.size() || text[pos++] != '-') return std::nullopt;
  if (!read_digits(text, pos, 2, v)) return std::nullopt;
  f.day = static_cast<unsigned>(v);
  if (pos == text.size()) return to_timestamp(f);

  if (text[pos] != 'T' && text[pos] != ' ') return std::nullopt;
  ++pos;
  if (!read_digits(text, pos, 2, f.hour)) return std::nullopt;
  if (pos >= text.size() || text[pos++] != ':') return std::nullopt;
  if (!read_digits(text, pos, 2, f.minute)) return std::nullopt;
  if (pos < text.size() && text[pos] == ':') {
    ++pos;
    if (!read_digits(text, pos, 2, f.second)) return std::nullopt;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      int digits = 0;
      int millis = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        if (digits < 3) millis = millis * 10 + (text[pos] - '0');
        ++digits;
        ++pos;
      }
      if (digits == 0) return std::nullopt;
      for (int i = digits; i < 3; ++i) millis *= 10;
      f.millis = millis;
    }
  }
  if (pos == text.size()) return to_timestamp(f);
  if (text[pos] == 'Z' && pos + 1 == text.size()) return to_timestamp(f);
  if (text[pos] == '+' || text[pos] == '-') {
    const int sign = text[pos] == '+' ? 1 : -1;
    ++pos;
    int oh = 0;
    int om = 0;
    if (!read_digits(text, pos, 2, oh)) return std::nullopt;
    if (pos < text.size() && text[pos] == ':') ++pos;
    if (!read_digits(text, pos, 2, om)) return std::nullopt;
    if (pos != text.size() || oh > 23 || om > 59) return std::nullopt;
    f.offset_minutes = sign * (oh * 60 + om);
    return to_timestamp(f);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text, std::string_view pattern) {
  if (pattern == kIso8601) return parse_iso(text);
  Fields f;
  std::size_t tp = 0;
  std::size_t pp = 0;
  int v = 0;
  while (pp < pattern.size()) {
    if (starts_with(pattern, pp, "YYYY")) {
      if (!read_digits(text, tp, 4, f.year)) return std::nullopt;
      pp += 4;
    } else if (starts_with(pattern, pp, "SSS")) {
      if (!read_digits(text, tp, 3, f.millis)) return std::nullopt;
      pp += 3;
    } else if (starts_with(pattern, pp, "MM")) {
      if (!read_digits(text, tp, 2, v)) return std::nullopt;
      f.month = static_cast<unsigned>(v);
      pp += 2;
    } else if (starts_with(pattern, pp, "DD")) {
      if (!read_digits(text, tp, 2, v)) return std::nullopt;
      f.day = static_cast<unsigned>(v);
      pp += 2;
    } else if (starts_with(pattern, pp, "HH")) {
      if (!read_digits(text, tp, 2, f.hour)) return std::nullopt;
      pp += 2;
    } else if (starts_with(pattern, pp, "mm")) {
      if (!read_digits(text, tp, 2, f.minute)) return std::nullopt;
      pp += 2;
    } else if (starts_with(pattern, pp, "ss")) {
      if (!read_digits(text, tp, 2, f.second)) return std::nullopt;
      pp += 2;
    } else {
      if (tp >= text.size() || text[tp] != pattern[pp]) return std::nullopt;
      ++tp;
      ++pp;
    }
  }
  if (tp != text.size()) return std::nullopt;
  return to_timestamp(f);
}

std::optional<Timestamp> parse_timestamp(std::string_view text,
                                         std::span<const std::string> patterns) {
  for (const auto& p : patterns) {
    if (auto t = parse_timestamp(text, p)) return t;
  }
  return std::nullopt;
}

std::string format_timestamp(Timestamp t, std::string_view pattern) {
  if (pattern == kIso8601) return format_iso8601(t);
  const Fields f = to_fields(t);
  std::string out;
  char buf[8];
  auto put = [&](int value, int width) {
    std::snprintf(buf, sizeof buf, "%0*d", width, value);
    out += buf;
  };
  std::size_t pp = 0;
  while (pp < pattern.size()) {
    if (starts_with(pattern, pp, "YYYY")) {
      put(f.year, 4);
      pp += 4;
    } else if (starts_with(pattern, pp, "SSS")) {
      put(f.millis, 3);
      pp += 3;
    } else if (starts_with(pattern, pp, "MM")) {
      put(static_cast<int>(f.month), 2);
      pp += 2;
    } else if (starts_with(pattern, pp, "DD")) {
      put(static_cast<int>(f.day), 2);
      pp += 2;
    } else if (starts_with(pattern, pp, "HH")) {
      put(f.hour, 2);
      pp += 2;
    } else if (starts_with(pattern, pp, "mm")) {
      put(f.minute, 2);
      pp += 2;
    } else if (starts_with(pattern, pp, "ss")) {
      put(f.second, 2);
      pp += 2;
    } else {
      out += pattern[pp++];
    }
  }
  return out;
}

std::string format_iso8601(Timestamp t) {
  const Fields f = to_fields(t);
  char buf[40];
  if (f.millis != 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", f.year, f.month, f.day,
                  f.hour, f.minute, f.second, f.millis);
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", f.year, f.month, f.day,
                  f.hour, f.minute, f.second);
  }
  return buf;
}

std::string format_xes_date(Timestamp t) {
  const Fields f = to_fields(t);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03d+00:00", f.year, f.month,
                f.day, f.hour, f.minute, f.second, f.millis);
  return buf;
}

}  // namespace evlog
