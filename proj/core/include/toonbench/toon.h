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

// TOON (Token-Oriented Object Notation) reader and writer.
//
// Grammar accepted by ParseToon (two spaces per indentation level):
//
//   key: scalar                  scalar field
//   key:                         nested object, fields one level deeper
//   key[N]:                      list array, N "- " items one level deeper
//   key[N]{h1,h2}:               tabular array, N rows of comma-separated cells
//   key[N]: a,b,c                inline array of scalars (read only)
//
// List items are `- scalar`, `- [N]...` (nested array), `-` (empty object) or
// `- key...` (object whose first field sits on the dash line and whose other
// fields are aligned under it). Unquoted scalars are `true`/`false`/`null`,
// JSON numerals, or text. Double-quoted strings accept the escapes \" \\ \n
// \r \t. Keys that are not identifiers are double-quoted.

#ifndef TOONBENCH_TOON_H_
#define TOONBENCH_TOON_H_

#include <string>
#include <string_view>
#include <vector>

#include "toonbench/value.h"

namespace toonbench {

enum class ToonErrorKind : uint8_t {
  kBadIndent,
  kCountMismatch,
  kArityMismatch,
  kBadEscape,
  kUnexpectedToken,
  kMissingFence,
};

std::string_view ToonErrorKindName(ToonErrorKind kind);

/// Decode failure with a 1-based location inside the offending line. The
/// message is phrased for inclusion in a repair prompt.
class ToonError : public Error {
 public:
  ToonError(ToonErrorKind kind, int line, int column, const std::string& detail);
  ToonErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  ToonErrorKind kind_;
  int line_;
  int column_;
  std::string detail_;
};

class NonObjectRootError : public Error {
 public:
  NonObjectRootError() : Error("TOON documents must have an object at the root") {}
};

enum class ArrayLayout : uint8_t { kList, kTabular, kInline };

/// How one array of a parsed document was written.
struct ArrayInfo {
  Path path;
  ArrayLayout layout;
  std::vector<std::string> headers;  // tabular only
  size_t declared_count;
  int line;  // line of the `[N]` header
};

struct ToonDocument {
  Value root;
  std::vector<ArrayInfo> arrays;  // document order
};

ToonDocument ParseToon(std::string_view text);

/// Deterministic encoder. Arrays whose elements are all objects with one
/// shared, non-empty key set of scalar values are written tabular; every
/// other array uses list layout. Throws NonObjectRootError.
std::string EncodeToon(const Value& v);

/// Contents of the first ```toon fence, or the whole output when it has no
/// fence but parses as TOON. Throws ToonError(kMissingFence) otherwise.
std::string ExtractToonBlock(std::string_view llm_output);

/// Same as ExtractToonBlock, and reports whether a fence was present.
std::string ExtractToonBlock(std::string_view llm_output, bool* had_fence);

/// ParseToon followed by EmitCanonicalJson.
std::string ToonToJson(std::string_view text);

/// True when `s` can be written without quotes as a TOON value.
bool IsSafeUnquotedToonString(std::string_view s);

/// Key as written in TOON: bare identifier or a quoted string.
std::string ToonKey(std::string_view key);

}  // namespace toonbench

#endif  // TOONBENCH_TOON_H_
