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

#include "toonbench/value.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <unordered_set>

namespace toonbench {

Integer::Integer(int64_t v) : digits_(std::to_string(v)) {}

std::optional<Integer> Integer::FromString(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  size_t first = text.find_first_not_of('0');
  Integer out;
  if (first == std::string_view::npos) return out;  // all zeros, including "-0"
  out.digits_.clear();
  if (negative) out.digits_.push_back('-');
  out.digits_.append(text.substr(first));
  return out;
}

std::optional<int64_t> Integer::ToInt64() const {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits_.data(), digits_.data() + digits_.size(), v);
  if (ec != std::errc() || ptr != digits_.data() + digits_.size()) return std::nullopt;
  return v;
}

double Integer::ToDouble() const { return std::strtod(digits_.c_str(), nullptr); }

std::string_view KindName(ValueKind kind) {
  switch (kind) {
    case ValueKind::kNull: return "null";
    case ValueKind::kBool: return "bool";
    case ValueKind::kInt: return "int";
    case ValueKind::kFloat: return "float";
    case ValueKind::kString: return "str";
    case ValueKind::kArray: return "array";
    case ValueKind::kObject: return "object";
  }
  return "?";
}

Value::Value(double v) : data_(v) {
  if (!std::isfinite(v)) throw Error("non-finite float cannot be stored in a Value");
}

Value::Value(Object o) {
  if (o.size() > 1) {
    std::unordered_set<std::string_view> seen;
    for (const Member& m : o) {
      if (!seen.insert(m.key).second) throw Error("duplicate object key '" + m.key + "'");
    }
  }
  data_ = std::move(o);
}

Value Value::MakeObject(std::initializer_list<std::pair<std::string, Value>> members) {
  Object o;
  o.reserve(members.size());
  for (const auto& [k, v] : members) o.push_back(Member{k, v});
  return Value(std::move(o));
}

Value Value::MakeArray(std::initializer_list<Value> items) { return Value(Array(items)); }

const Value* Value::Find(std::string_view key) const {
  if (!is_object()) return nullptr;
  for (const Member& m : as_object()) {
    if (m.key == key) return &m.value;
  }
  return nullptr;
}

const Value& Value::at(std::string_view key) const {
  const Value* v = Find(key);
  if (v == nullptr) throw Error("no member '" + std::string(key) + "'");
  return *v;
}

size_t Value::size() const {
  if (is_array()) return as_array().size();
  if (is_object()) return as_object().size();
  return 0;
}

std::string FormatPath(const Path& path) {
  if (path.empty()) return "$";
  std::string out;
  for (const PathSegment& seg : path) {
    if (const auto* key = std::get_if<std::string>(&seg)) {
      if (!out.empty()) out.push_back('.');
      out += *key;
    } else {
      out += '[' + std::to_string(std::get<size_t>(seg)) + ']';
    }
  }
  return out;
}

std::string_view DiffKindName(DiffKind kind) {
  switch (kind) {
    case DiffKind::kMissingKey: return "missing-key";
    case DiffKind::kExtraKey: return "extra-key";
    case DiffKind::kTypeMismatch: return "type-mismatch";
    case DiffKind::kValueMismatch: return "value-mismatch";
    case DiffKind::kLengthMismatch: return "length-mismatch";
  }
  return "?";
}

std::string DiffPath::Describe() const {
  return std::string(DiffKindName(kind)) + " at " + FormatPath(segments);
}

namespace {

// Exact decimal text of an integral double.
Integer IntegralFloatToInteger(double f) {
  char buf[400];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), f, std::chars_format::fixed, 0);
  return *Integer::FromString(std::string_view(buf, ptr - buf));
}

bool IsIntegral(double f) { return std::isfinite(f) && std::trunc(f) == f; }

}  // namespace

Value Canonicalize(const Value& v) {
  switch (v.kind()) {
    case ValueKind::kFloat:
      if (IsIntegral(v.as_float())) return Value(IntegralFloatToInteger(v.as_float()));
      return v;
    case ValueKind::kArray: {
      Array out;
      out.reserve(v.as_array().size());
      for (const Value& item : v.as_array()) out.push_back(Canonicalize(item));
      return Value(std::move(out));
    }
    case ValueKind::kObject: {
      Object out;
      out.reserve(v.as_object().size());
      for (const Member& m : v.as_object()) out.push_back(Member{m.key, Canonicalize(m.value)});
      std::sort(out.begin(), out.end(),
                [](const Member& a, const Member& b) { return a.key < b.key; });
      return Value(std::move(out));
    }
    default:
      return v;
  }
}

namespace {

// Both arguments canonical. Returns the first difference, if any.
std::optional<DiffPath> FirstDiff(const Value& a, const Value& b, Path& path) {
  if (a.kind() != b.kind()) {
    if (a.is_number() && b.is_number()) return DiffPath{path, DiffKind::kValueMismatch};
    return DiffPath{path, DiffKind::kTypeMismatch};
  }
  switch (a.kind()) {
    case ValueKind::kNull:
      return std::nullopt;
    case ValueKind::kBool:
      if (a.as_bool() != b.as_bool()) return DiffPath{path, DiffKind::kValueMismatch};
      return std::nullopt;
    case ValueKind::kInt:
      if (!(a.as_int() == b.as_int())) return DiffPath{path, DiffKind::kValueMismatch};
      return std::nullopt;
    case ValueKind::kFloat:
      if (a.as_float() != b.as_float()) return DiffPath{path, DiffKind::kValueMismatch};
      return std::nullopt;
    case ValueKind::kString:
      if (a.as_string() != b.as_string()) return DiffPath{path, DiffKind::kValueMismatch};
      return std::nullopt;
    case ValueKind::kArray: {
      const Array& xs = a.as_array();
      const Array& ys = b.as_array();
      if (xs.size() != ys.size()) return DiffPath{path, DiffKind::kLengthMismatch};
      for (size_t i = 0; i < xs.size(); ++i) {
        path.emplace_back(i);
        auto d = FirstDiff(xs[i], ys[i], path);
        path.pop_back();
        if (d) return d;
      }
      return std::nullopt;
    }
    case ValueKind::kObject: {
      // Canonical objects are key-sorted: merge walk.
      const Object& xs = a.as_object();
      const Object& ys = b.as_object();
      size_t i = 0, j = 0;
      while (i < xs.size() || j < ys.size()) {
        if (j == ys.size() || (i < xs.size() && xs[i].key < ys[j].key)) {
          path.emplace_back(xs[i].key);
          DiffPath d{path, DiffKind::kExtraKey};
          path.pop_back();
          return d;
        }
        if (i == xs.size() || ys[j].key < xs[i].key) {
          path.emplace_back(ys[j].key);
          DiffPath d{path, DiffKind::kMissingKey};
          path.pop_back();
          return d;
        }
        path.emplace_back(xs[i].key);
        auto d = FirstDiff(xs[i].value, ys[j].value, path);
        path.pop_back();
        if (d) return d;
        ++i;
        ++j;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

Comparison DeepEqual(const Value& actual, const Value& expected) {
  Path path;
  auto diff = FirstDiff(Canonicalize(actual), Canonicalize(expected), path);
  return Comparison{!diff.has_value(), std::move(diff)};
}

}  // namespace toonbench
