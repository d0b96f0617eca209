#include "gpsxyt/time_format.hpp"

#include <cstdio>

namespace gpsxyt {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  // Exactly n decimal digits.
  std::optional<int> digits(int n) {
    if (pos_ + n > s_.size()) return std::nullopt;
    int v = 0;
    for (int i = 0; i < n; ++i) {
      char c = s_[pos_ + i];
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
    }
    pos_ += n;
    return v;
  }

  bool at_digit() const { return peek() >= '0' && peek() <= '9'; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<ParsedInstant> parse_datetime(std::string_view text) {
  using namespace std::chrono;
  Cursor in(text);

  auto y = in.digits(4);
  if (!y || !in.eat('-')) return std::nullopt;
  auto mo = in.digits(2);
  if (!mo || !in.eat('-')) return std::nullopt;
  auto d = in.digits(2);
  if (!d) return std::nullopt;
  if (!in.eat('T') && !in.eat('t') && !in.eat(' ')) return std::nullopt;

  auto hh = in.digits(2);
  if (!hh || !in.eat(':')) return std::nullopt;
  auto mm = in.digits(2);
  if (!mm) return std::nullopt;
  int ss = 0;
  long long micros = 0;
  if (in.eat(':')) {
    auto s = in.digits(2);
    if (!s) return std::nullopt;
    ss = *s;
    if (in.eat('.') || in.eat(',')) {
      if (!in.at_digit()) return std::nullopt;
      int used = 0;
      while (in.at_digit()) {
        int digit = *in.digits(1);
        if (used < 6) {
          micros = micros * 10 + digit;
          ++used;
        }
      }
      for (; used < 6; ++used) micros *= 10;
    }
  }

  bool has_offset = false;
  int offset_minutes = 0;
  if (in.eat('Z') || in.eat('z')) {
    has_offset = true;
  } else if (in.peek() == '+' || in.peek() == '-') {
    const int sign = in.peek() == '-' ? -1 : 1;
    in.eat(in.peek());
    auto oh = in.digits(2);
    if (!oh || *oh > 23) return std::nullopt;
    int om = 0;
    if (!in.done()) {
      in.eat(':');
      auto m = in.digits(2);
      if (!m || *m > 59) return std::nullopt;
      om = *m;
    }
    has_offset = true;
    offset_minutes = sign * (*oh * 60 + om);
  }
  if (!in.done()) return std::nullopt;

  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)},
                           day{static_cast<unsigned>(*d)}};
  if (!ymd.ok() || *hh > 23 || *mm > 59 || ss > 60) return std::nullopt;

  Instant t = time_point_cast<microseconds>(sys_days{ymd}) + hours{*hh} +
              minutes{*mm} + seconds{ss} + microseconds{micros} -
              minutes{offset_minutes};
  return ParsedInstant{t, has_offset};
}

std::string format_instant(Instant t) {
  using namespace std::chrono;
  const sys_days day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss<microseconds> tod{t - day_point};

  char buf[64];
  int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d",
                        static_cast<int>(ymd.year()),
                        static_cast<unsigned>(ymd.month()),
                        static_cast<unsigned>(ymd.day()),
                        static_cast<int>(tod.hours().count()),
                        static_cast<int>(tod.minutes().count()),
                        static_cast<int>(tod.seconds().count()));
  std::string out(buf, static_cast<std::size_t>(n));
  long long frac = tod.subseconds().count();
  if (frac != 0) {
    std::snprintf(buf, sizeof buf, ".%06lld", frac);
    std::string digits(buf);
    while (digits.back() == '0') digits.pop_back();
    out += digits;
  }
  out += 'Z';
  return out;
}

}  // namespace gpsxyt
