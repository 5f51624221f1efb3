// Copyright 2026 The Treecoder Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treecoder {

// Calendar date stored as the integer YYYYMMDD, so ordering is numeric.
class Date {
 public:
  constexpr Date() = default;

  // Returns nothing unless text is exactly eight digits naming a real date.
  static std::optional<Date> Parse(std::string_view text) {
    if (text.size() != 8) return std::nullopt;
    int value = 0;
    for (char c : text) {
      if (c < '0' || c > '9') return std::nullopt;
      value = value * 10 + (c - '0');
    }
    int year = value / 10000;
    int month = value / 100 % 100;
    int day = value % 100;
    if (year < 1 || month < 1 || month > 12 || day < 1) return std::nullopt;
    if (day > DaysInMonth(year, month)) return std::nullopt;
    return Date(value);
  }

  static Date FromString(std::string_view text) {
    auto date = Parse(text);
    if (!date) {
      throw std::invalid_argument("invalid date '" + std::string(text) +
                                  "', expected YYYYMMDD");
    }
    return *date;
  }

  constexpr int value() const { return value_; }

  std::string ToString() const {
    std::string text = std::to_string(value_);
    return std::string(8 - std::min<size_t>(8, text.size()), '0') + text;
  }

  friend constexpr auto operator<=>(Date, Date) = default;

 private:
  constexpr explicit Date(int value) : value_(value) {}

  static int DaysInMonth(int year, int month) {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30,
                                    31, 31, 30, 31, 30, 31};
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return month == 2 && leap ? 29 : kDays[month - 1];
  }

  int value_ = 19700101;
};

}  // namespace treecoder
