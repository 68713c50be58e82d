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

#ifndef TOONBENCH_JSON_H_
#define TOONBENCH_JSON_H_

#include <string>
#include <string_view>

#include "toonbench/value.h"

namespace toonbench {

class JsonSyntaxError : public Error {
 public:
  JsonSyntaxError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class DuplicateKeyError : public Error {
 public:
  explicit DuplicateKeyError(Path path);
  const Path& path() const { return path_; }

 private:
  Path path_;
};

/// Parses one RFC 8259 document (surrounding whitespace allowed).
/// Numerals without fraction or exponent become Int, all others Float.
/// Duplicate keys, lone surrogates, invalid UTF-8 and out-of-range floats are
/// errors.
Value ParseJson(std::string_view text);

/// Canonical JSON: keys sorted by code point, no insignificant whitespace,
/// integers (and integral floats) as plain digits, other floats in shortest
/// round-trip form, minimal string escaping.
std::string EmitCanonicalJson(const Value& v);

/// Quoted, minimally escaped JSON string literal.
std::string QuoteJsonString(std::string_view s);

}  // namespace toonbench

#endif  // TOONBENCH_JSON_H_
