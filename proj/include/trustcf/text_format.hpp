// Copyright 2026 The trustcf Authors
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

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustcf/errors.hpp"

namespace trustcf {

// Field separation for the text inputs. Without a delimiter, any run of
// whitespace separates fields; with one, fields are split on that character
// and surrounding whitespace is trimmed.
struct LineFormat {
  std::optional<char> delimiter;

  static LineFormat whitespace() { return {}; }
  static LineFormat with_delimiter(char c) { return {c}; }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

inline std::vector<std::string_view> split_fields(std::string_view line,
                                                  const LineFormat& format) {
  std::vector<std::string_view> fields;
  if (format.delimiter) {
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(*format.delimiter, start);
      fields.push_back(trim(line.substr(start, pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return fields;
  }
  constexpr std::string_view ws = " \t\r\n\f\v";
  std::size_t pos = 0;
  while (true) {
    const auto b = line.find_first_not_of(ws, pos);
    if (b == std::string_view::npos) break;
    const auto e = line.find_first_of(ws, b);
    fields.push_back(line.substr(b, e == std::string_view::npos ? e : e - b));
    if (e == std::string_view::npos) break;
    pos = e;
  }
  return fields;
}

inline std::uint64_t parse_id(std::string_view field, std::size_t line,
                              const char* what) {
  if (!field.empty() && field.front() == '-') {
    throw ParseError(line, std::string("negative ") + what + " '" +
                               std::string(field) + "'");
  }
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(line, std::string("malformed ") + what + " '" +
                               std::string(field) + "'");
  }
  return v;
}

inline double parse_real(std::string_view field, std::size_t line,
                         const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(line, std::string("malformed ") + what + " '" +
                               std::string(field) + "'");
  }
  return v;
}

// Calls fn(fields, line_number) for every non-empty, non-comment line.
template <typename Fn>
void for_each_record(std::istream& in, const LineFormat& format, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (skippable(line)) continue;
    fn(split_fields(line, format), number);
  }
}

}  // namespace detail
}  // namespace trustcf
