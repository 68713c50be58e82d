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

#ifndef TOONBENCH_VALUE_H_
#define TOONBENCH_VALUE_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace toonbench {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (bad argument or option).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Signed integer of unbounded magnitude, stored as normalized decimal text
/// ("0", "-12", never "-0" or leading zeros). Only equality and conversion are
/// needed by the pipeline, so no arithmetic is provided.
class Integer {
 public:
  Integer() : digits_("0") {}
  Integer(int64_t v);  // NOLINT(google-explicit-constructor)

  /// Parses `-?[0-9]+`; leading zeros are accepted and normalized away.
  static std::optional<Integer> FromString(std::string_view text);

  const std::string& ToString() const { return digits_; }
  std::optional<int64_t> ToInt64() const;
  double ToDouble() const;
  bool IsNegative() const { return digits_[0] == '-'; }

  friend bool operator==(const Integer& a, const Integer& b) = default;

 private:
  std::string digits_;
};

class Value;

struct Member;
using Array = std::vector<Value>;
using Object = std::vector<Member>;

enum class ValueKind : uint8_t { kNull, kBool, kInt, kFloat, kString, kArray, kObject };

std::string_view KindName(ValueKind kind);

/// Language-neutral structured data tree shared by the JSON and TOON codecs.
///
/// Objects keep insertion order and unique keys; floats are always finite.
/// Both invariants are enforced at construction and by every parser, so code
/// holding a Value may rely on them.
class Value {
 public:
  Value() = default;  // null
  Value(std::nullptr_t) {}  // NOLINT(google-explicit-constructor)
  Value(bool b) : data_(b) {}  // NOLINT(google-explicit-constructor)
  Value(int v) : data_(Integer(v)) {}  // NOLINT(google-explicit-constructor)
  Value(int64_t v) : data_(Integer(v)) {}  // NOLINT(google-explicit-constructor)
  Value(Integer v) : data_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Value(double v);  // NOLINT(google-explicit-constructor)
  Value(const char* s) : data_(std::string(s)) {}  // NOLINT(google-explicit-constructor)
  Value(std::string s) : data_(std::move(s)) {}  // NOLINT(google-explicit-constructor)
  Value(Array a) : data_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Value(Object o);  // NOLINT(google-explicit-constructor)

  /// Builds an object from `{key, value}` pairs; throws on duplicate keys.
  static Value MakeObject(std::initializer_list<std::pair<std::string, Value>> members);
  static Value MakeArray(std::initializer_list<Value> items);

  ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }
  bool is_null() const { return kind() == ValueKind::kNull; }
  bool is_bool() const { return kind() == ValueKind::kBool; }
  bool is_int() const { return kind() == ValueKind::kInt; }
  bool is_float() const { return kind() == ValueKind::kFloat; }
  bool is_number() const { return is_int() || is_float(); }
  bool is_string() const { return kind() == ValueKind::kString; }
  bool is_array() const { return kind() == ValueKind::kArray; }
  bool is_object() const { return kind() == ValueKind::kObject; }
  bool is_scalar() const { return !is_array() && !is_object(); }

  bool as_bool() const { return std::get<bool>(data_); }
  const Integer& as_int() const { return std::get<Integer>(data_); }
  double as_float() const { return std::get<double>(data_); }
  const std::string& as_string() const { return std::get<std::string>(data_); }
  const Array& as_array() const { return std::get<Array>(data_); }
  const Object& as_object() const { return std::get<Object>(data_); }

  /// Object member lookup; nullptr when absent or when this is not an object.
  const Value* Find(std::string_view key) const;
  /// Object member lookup that throws when the key is absent.
  const Value& at(std::string_view key) const;
  const Value& at(size_t index) const { return as_array().at(index); }
  size_t size() const;

 private:
  std::variant<std::monostate, bool, Integer, double, std::string, Array, Object> data_;
};

struct Member {
  std::string key;
  Value value;
};

/// One step of a location inside a Value: an object key or an array index.
using PathSegment = std::variant<std::string, size_t>;
using Path = std::vector<PathSegment>;

/// Renders `items[0].qty`; the root renders as `$`.
std::string FormatPath(const Path& path);

enum class DiffKind : uint8_t {
  kMissingKey,
  kExtraKey,
  kTypeMismatch,
  kValueMismatch,
  kLengthMismatch,
};

std::string_view DiffKindName(DiffKind kind);

/// First point at which two Values differ. An empty path means the roots differ.
struct DiffPath {
  Path segments;
  DiffKind kind;

  std::string Describe() const;
  friend bool operator==(const DiffPath&, const DiffPath&) = default;
};

/// Recursively sorts object keys by code point and turns integral floats into
/// Int. Array order and strings are untouched.
Value Canonicalize(const Value& v);

struct Comparison {
  bool equal;
  std::optional<DiffPath> diff;
};

/// Structural equality of the canonical forms of `actual` and `expected`.
/// Int k equals Float f iff f is integral and numerically equal to k. On a
/// difference, reports the first one in depth-first, key-sorted order; keys
/// present only in `expected` are kMissingKey, only in `actual` kExtraKey.
Comparison DeepEqual(const Value& actual, const Value& expected);

}  // namespace toonbench

#endif  // TOONBENCH_VALUE_H_
