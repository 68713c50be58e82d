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

#include <algorithm>
#include <optional>

#include "lexing.h"
#include "toonbench/toon.h"

namespace toonbench {

bool IsSafeUnquotedToonString(std::string_view s) {
  if (s.empty() || s.front() == ' ' || s.back() == ' ') return false;
  for (char ch : s) {
    auto c = static_cast<uint8_t>(ch);
    if (c < 0x20 || c == 0x7F) return false;
    switch (c) {
      case '"': case '\\': case ',': case ':': case '[': case ']': case '{': case '}':
        return false;
      default:
        break;
    }
  }
  if (s == "true" || s == "false" || s == "null") return false;
  return lex::ClassifyNumeral(s) == lex::NumeralShape::kNone;
}

namespace {

bool IsIdentifier(std::string_view s) {
  if (s.empty() || !lex::IsIdentStart(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return lex::IsIdentChar(c); });
}

std::string Quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string EncodeScalar(const Value& v) {
  switch (v.kind()) {
    case ValueKind::kNull: return "null";
    case ValueKind::kBool: return v.as_bool() ? "true" : "false";
    case ValueKind::kInt: return v.as_int().ToString();
    case ValueKind::kFloat: return lex::FormatFloat(v.as_float());
    case ValueKind::kString:
      return IsSafeUnquotedToonString(v.as_string()) ? v.as_string() : Quote(v.as_string());
    default: return {};
  }
}

// Shared header field order when `items` qualifies for tabular layout.
std::optional<std::vector<std::string>> TabularHeaders(const Array& items) {
  if (items.empty() || !items[0].is_object() || items[0].as_object().empty()) return std::nullopt;
  std::vector<std::string> headers;
  for (const Member& m : items[0].as_object()) headers.push_back(m.key);
  std::vector<std::string> sorted = headers;
  std::sort(sorted.begin(), sorted.end());
  for (const Value& item : items) {
    if (!item.is_object() || item.as_object().size() != headers.size()) return std::nullopt;
    std::vector<std::string> keys;
    for (const Member& m : item.as_object()) {
      if (!m.value.is_scalar()) return std::nullopt;
      keys.push_back(m.key);
    }
    std::sort(keys.begin(), keys.end());
    if (keys != sorted) return std::nullopt;
  }
  return headers;
}

class Encoder {
 public:
  std::string Finish() {
    std::string out;
    for (size_t i = 0; i < lines_.size(); ++i) {
      if (i > 0) out.push_back('\n');
      out += lines_[i];
    }
    return out;
  }

  void Fields(const Object& obj, int level) {
    for (const Member& m : obj) Field(Indent(level), m.key, m.value, level);
  }

 private:
  static std::string Indent(int level) { return std::string(static_cast<size_t>(level) * 2, ' '); }

  // Writes one field whose first line starts with `lead`; the field's
  // children sit at field_level + 1.
  void Field(std::string lead, const std::string& key, const Value& v, int field_level) {
    lead += ToonKey(key);
    if (v.is_object()) {
      lines_.push_back(lead + ":");
      Fields(v.as_object(), field_level + 1);
    } else if (v.is_array()) {
      ArrayBody(std::move(lead), v.as_array(), field_level + 1);
    } else {
      lines_.push_back(lead + ": " + EncodeScalar(v));
    }
  }

  void ArrayBody(std::string lead, const Array& items, int child_level) {
    std::string count = "[" + std::to_string(items.size()) + "]";
    if (items.empty()) {
      lines_.push_back(lead + count + ":");
      return;
    }
    if (auto headers = TabularHeaders(items)) {
      std::string header = lead + count + "{";
      for (size_t i = 0; i < headers->size(); ++i) {
        if (i > 0) header.push_back(',');
        header += ToonKey((*headers)[i]);
      }
      lines_.push_back(header + "}:");
      for (const Value& item : items) {
        std::string row = Indent(child_level);
        for (size_t i = 0; i < headers->size(); ++i) {
          if (i > 0) row.push_back(',');
          row += EncodeScalar(*item.Find((*headers)[i]));
        }
        lines_.push_back(std::move(row));
      }
      return;
    }
    lines_.push_back(lead + count + ":");
    for (const Value& item : items) ListItem(item, child_level);
  }

  void ListItem(const Value& v, int level) {
    std::string dash = Indent(level) + "-";
    if (v.is_object()) {
      const Object& obj = v.as_object();
      if (obj.empty()) {
        lines_.push_back(dash);
        return;
      }
      Field(dash + " ", obj[0].key, obj[0].value, level + 1);
      for (size_t i = 1; i < obj.size(); ++i) {
        Field(Indent(level + 1), obj[i].key, obj[i].value, level + 1);
      }
    } else if (v.is_array()) {
      ArrayBody(dash + " ", v.as_array(), level + 1);
    } else {
      lines_.push_back(dash + " " + EncodeScalar(v));
    }
  }

  std::vector<std::string> lines_;
};

}  // namespace

std::string ToonKey(std::string_view key) {
  return IsIdentifier(key) ? std::string(key) : Quote(key);
}

std::string EncodeToon(const Value& v) {
  if (!v.is_object()) throw NonObjectRootError();
  Encoder enc;
  enc.Fields(v.as_object(), 0);
  return enc.Finish();
}

}  // namespace toonbench
