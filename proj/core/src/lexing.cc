// Copyright 2026 The toonbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lexing.h"

#include <charconv>
#include <cmath>

namespace toonbench::lex {

NumeralShape ClassifyNumeral(std::string_view text) {
  size_t i = 0;
  const size_t n = text.size();
  if (i < n && text[i] == '-') ++i;
  if (i == n) return NumeralShape::kNone;
  if (text[i] == '0') {
    ++i;
  } else if (text[i] >= '1' && text[i] <= '9') {
    while (i < n && IsDigit(text[i])) ++i;
  } else {
    return NumeralShape::kNone;
  }
  bool decimal = false;
  if (i < n && text[i] == '.') {
    ++i;
    size_t start = i;
    while (i < n && IsDigit(text[i])) ++i;
    if (i == start) return NumeralShape::kNone;
    decimal = true;
  }
  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
    size_t start = i;
    while (i < n && IsDigit(text[i])) ++i;
    if (i == start) return NumeralShape::kNone;
    decimal = true;
  }
  if (i != n) return NumeralShape::kNone;
  return decimal ? NumeralShape::kDecimal : NumeralShape::kInteger;
}

std::optional<Value> NumeralToValue(std::string_view text, NumeralShape shape) {
  if (shape == NumeralShape::kInteger) {
    auto v = Integer::FromString(text);
    if (!v) return std::nullopt;
    return Value(std::move(*v));
  }
  if (shape != NumeralShape::kDecimal) return std::nullopt;
  double d = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(d)) {
    return std::nullopt;
  }
  return Value(d);
}

std::string FormatFloat(double f) {
  char buf[400];
  if (std::trunc(f) == f) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), f, std::chars_format::fixed, 0);
    std::string s(buf, ptr);
    return s == "-0" ? "0" : s;
  }
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), f);
  return std::string(buf, ptr);
}

bool Utf8Validator::Step(uint8_t& state, uint8_t b) {
  switch (state) {
    case kAccept:
      if (b < 0x80) return true;
      if (b >= 0xC2 && b <= 0xDF) { state = kNeed1; return true; }
      if (b == 0xE0) { state = kE0; return true; }
      if (b == 0xED) { state = kED; return true; }
      if (b >= 0xE1 && b <= 0xEF) { state = kNeed2; return true; }
      if (b == 0xF0) { state = kF0; return true; }
      if (b >= 0xF1 && b <= 0xF3) { state = kNeed3; return true; }
      if (b == 0xF4) { state = kF4; return true; }
      return false;
    case kNeed1:
      if (b < 0x80 || b > 0xBF) return false;
      state = kAccept;
      return true;
    case kNeed2:
      if (b < 0x80 || b > 0xBF) return false;
      state = kNeed1;
      return true;
    case kNeed3:
      if (b < 0x80 || b > 0xBF) return false;
      state = kNeed2;
      return true;
    case kE0:
      if (b < 0xA0 || b > 0xBF) return false;
      state = kNeed1;
      return true;
    case kED:
      if (b < 0x80 || b > 0x9F) return false;
      state = kNeed1;
      return true;
    case kF0:
      if (b < 0x90 || b > 0xBF) return false;
      state = kNeed2;
      return true;
    case kF4:
      if (b < 0x80 || b > 0x8F) return false;
      state = kNeed2;
      return true;
  }
  return false;
}

int Utf8Validator::SequenceLength(uint8_t b) {
  if (b < 0x80) return 1;
  if (b >= 0xC2 && b <= 0xDF) return 2;
  if (b >= 0xE0 && b <= 0xEF) return 3;
  if (b >= 0xF0 && b <= 0xF4) return 4;
  return 0;
}

bool IsValidUtf8(std::string_view s) {
  uint8_t state = Utf8Validator::kAccept;
  for (char c : s) {
    if (!Utf8Validator::Step(state, static_cast<uint8_t>(c))) return false;
  }
  return state == Utf8Validator::kAccept;
}

}  // namespace toonbench::lex
