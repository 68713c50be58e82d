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

// Lexical helpers shared by the codecs and the grammar engine. Not installed.

#ifndef TOONBENCH_SRC_LEXING_H_
#define TOONBENCH_SRC_LEXING_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "toonbench/value.h"

namespace toonbench::lex {

enum class NumeralShape : uint8_t { kNone, kInteger, kDecimal };

/// Classifies `text` against -?(0|[1-9][0-9]*)(\.[0-9]+)?([eE][+-]?[0-9]+)?
NumeralShape ClassifyNumeral(std::string_view text);

/// Converts a numeral (already classified) to Int or Float. Float conversion
/// that over- or underflows yields nullopt.
std::optional<Value> NumeralToValue(std::string_view text, NumeralShape shape);

/// Shortest round-trip decimal form of a finite double; integral values are
/// printed as exact integers.
std::string FormatFloat(double f);

/// Incremental UTF-8 validator (RFC 3629: no overlongs, no surrogates,
/// max U+10FFFF).
class Utf8Validator {
 public:
  enum State : uint8_t {
    kAccept = 0,
    kNeed1,       // one continuation 80..BF
    kNeed2,       // two continuations
    kNeed3,       // three continuations
    kE0,          // A0..BF, then one more
    kED,          // 80..9F, then one more
    kF0,          // 90..BF, then two more
    kF4,          // 80..8F, then two more
  };
  /// Returns false when `b` is invalid in `state`.
  static bool Step(uint8_t& state, uint8_t b);
  /// Number of bytes in the sequence started by lead byte `b` (0 if invalid).
  static int SequenceLength(uint8_t b);
};

bool IsValidUtf8(std::string_view s);

inline bool IsIdentStart(uint8_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool IsIdentChar(uint8_t c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }
inline bool IsDigit(uint8_t c) { return c >= '0' && c <= '9'; }

}  // namespace toonbench::lex

#endif  // TOONBENCH_SRC_LEXING_H_
