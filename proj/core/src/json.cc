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

#include "toonbench/json.h"

#include <algorithm>
#include <unordered_set>

#include "lexing.h"

namespace toonbench {

JsonSyntaxError::JsonSyntaxError(int line, int column, const std::string& message)
    : Error("JSON syntax error at line " + std::to_string(line) + ", column " +
            std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

DuplicateKeyError::DuplicateKeyError(Path path)
    : Error("duplicate key at " + FormatPath(path)), path_(std::move(path)) {}

namespace {

constexpr int kMaxDepth = 512;

class JsonParser {
 public:
  explicit JsonParser(std::string_view text) : text_(text) {}

  Value ParseDocument() {
    SkipWhitespace();
    Value v = ParseValue(0);
    SkipWhitespace();
    if (pos_ != text_.size()) Fail("trailing characters after document");
    return v;
  }

 private:
  [[noreturn]] void Fail(const std::string& message) const {
    int line = 1, column = 1;
    for (size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw JsonSyntaxError(line, column, message);
  }

  bool AtEnd() const { return pos_ >= text_.size(); }
  uint8_t Peek() const { return static_cast<uint8_t>(text_[pos_]); }

  void SkipWhitespace() {
    while (!AtEnd()) {
      char c = text_[pos_];
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') break;
      ++pos_;
    }
  }

  void Expect(char c) {
    if (AtEnd() || text_[pos_] != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Value ParseValue(int depth) {
    if (depth > kMaxDepth) Fail("nesting too deep");
    if (AtEnd()) Fail("unexpected end of input");
    switch (text_[pos_]) {
      case '{': return ParseObject(depth);
      case '[': return ParseArray(depth);
      case '"': return Value(ParseString());
      case 't': ExpectLiteral("true"); return Value(true);
      case 'f': ExpectLiteral("false"); return Value(false);
      case 'n': ExpectLiteral("null"); return Value();
      default: return ParseNumber();
    }
  }

  void ExpectLiteral(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) != lit) Fail("invalid literal");
    pos_ += lit.size();
  }

  Value ParseNumber() {
    size_t start = pos_;
    while (!AtEnd()) {
      char c = text_[pos_];
      if (lex::IsDigit(c) || c == '-' || c == '+' || c == '.' || c == 'e' || c == 'E') {
        ++pos_;
      } else {
        break;
      }
    }
    std::string_view numeral = text_.substr(start, pos_ - start);
    auto shape = lex::ClassifyNumeral(numeral);
    if (shape == lex::NumeralShape::kNone) {
      pos_ = start;
      Fail(numeral.empty() ? "unexpected character" : "malformed number");
    }
    auto v = lex::NumeralToValue(numeral, shape);
    if (!v) {
      pos_ = start;
      Fail("number out of range");
    }
    return *std::move(v);
  }

  unsigned ParseHex4() {
    if (pos_ + 4 > text_.size()) Fail("truncated \\u escape");
    unsigned v = 0;
    for (int i = 0; i < 4; ++i) {
      char c = text_[pos_++];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= c - '0';
      else if (c >= 'a' && c <= 'f') v |= c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v |= c - 'A' + 10;
      else Fail("invalid hex digit in \\u escape");
    }
    return v;
  }

  static void AppendUtf8(std::string& out, unsigned cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }

  std::string ParseString() {
    Expect('"');
    std::string out;
    uint8_t utf8 = lex::Utf8Validator::kAccept;
    while (true) {
      if (AtEnd()) Fail("unterminated string");
      uint8_t c = Peek();
      if (c == '"' && utf8 == lex::Utf8Validator::kAccept) {
        ++pos_;
        return out;
      }
      if (c == '\\' && utf8 == lex::Utf8Validator::kAccept) {
        ++pos_;
        if (AtEnd()) Fail("unterminated escape");
        char e = text_[pos_++];
        switch (e) {
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case '/': out.push_back('/'); break;
          case 'b': out.push_back('\b'); break;
          case 'f': out.push_back('\f'); break;
          case 'n': out.push_back('\n'); break;
          case 'r': out.push_back('\r'); break;
          case 't': out.push_back('\t'); break;
          case 'u': {
            unsigned cp = ParseHex4();
            if (cp >= 0xDC00 && cp <= 0xDFFF) Fail("lone low surrogate");
            if (cp >= 0xD800 && cp <= 0xDBFF) {
              if (text_.substr(pos_, 2) != "\\u") Fail("high surrogate without low surrogate");
              pos_ += 2;
              unsigned lo = ParseHex4();
              if (lo < 0xDC00 || lo > 0xDFFF) Fail("high surrogate without low surrogate");
              cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
            }
            AppendUtf8(out, cp);
            break;
          }
          default:
            --pos_;
            Fail("invalid escape");
        }
        continue;
      }
      if (c < 0x20) Fail("control character in string");
      if (!lex::Utf8Validator::Step(utf8, c)) Fail("invalid UTF-8 in string");
      out.push_back(static_cast<char>(c));
      ++pos_;
    }
  }

  Value ParseArray(int depth) {
    Expect('[');
    Array items;
    SkipWhitespace();
    if (!AtEnd() && text_[pos_] == ']') {
      ++pos_;
      return Value(std::move(items));
    }
    while (true) {
      SkipWhitespace();
      path_.emplace_back(items.size());
      items.push_back(ParseValue(depth + 1));
      path_.pop_back();
      SkipWhitespace();
      if (AtEnd()) Fail("unterminated array");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      Expect(']');
      return Value(std::move(items));
    }
  }

  Value ParseObject(int depth) {
    Expect('{');
    Object members;
    std::unordered_set<std::string> seen;
    SkipWhitespace();
    if (!AtEnd() && text_[pos_] == '}') {
      ++pos_;
      return Value(std::move(members));
    }
    while (true) {
      SkipWhitespace();
      if (AtEnd() || text_[pos_] != '"') Fail("expected object key");
      std::string key = ParseString();
      path_.emplace_back(key);
      if (!seen.insert(key).second) throw DuplicateKeyError(path_);
      SkipWhitespace();
      Expect(':');
      SkipWhitespace();
      Value v = ParseValue(depth + 1);
      path_.pop_back();
      members.push_back(Member{std::move(key), std::move(v)});
      SkipWhitespace();
      if (AtEnd()) Fail("unterminated object");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      Expect('}');
      return Value(std::move(members));
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  Path path_;
};

void EmitTo(std::string& out, const Value& v) {
  switch (v.kind()) {
    case ValueKind::kNull: out += "null"; return;
    case ValueKind::kBool: out += v.as_bool() ? "true" : "false"; return;
    case ValueKind::kInt: out += v.as_int().ToString(); return;
    case ValueKind::kFloat: out += lex::FormatFloat(v.as_float()); return;
    case ValueKind::kString: out += QuoteJsonString(v.as_string()); return;
    case ValueKind::kArray: {
      out.push_back('[');
      bool first = true;
      for (const Value& item : v.as_array()) {
        if (!first) out.push_back(',');
        first = false;
        EmitTo(out, item);
      }
      out.push_back(']');
      return;
    }
    case ValueKind::kObject: {
      std::vector<const Member*> sorted;
      sorted.reserve(v.as_object().size());
      for (const Member& m : v.as_object()) sorted.push_back(&m);
      std::sort(sorted.begin(), sorted.end(),
                [](const Member* a, const Member* b) { return a->key < b->key; });
      out.push_back('{');
      bool first = true;
      for (const Member* m : sorted) {
        if (!first) out.push_back(',');
        first = false;
        out += QuoteJsonString(m->key);
        out.push_back(':');
        EmitTo(out, m->value);
      }
      out.push_back('}');
      return;
    }
  }
}

}  // namespace

Value ParseJson(std::string_view text) { return JsonParser(text).ParseDocument(); }

std::string QuoteJsonString(std::string_view s) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char ch : s) {
    auto c = static_cast<uint8_t>(ch);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          out += "\\u00";
          out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xF]);
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
  return out;
}

std::string EmitCanonicalJson(const Value& v) {
  std::string out;
  EmitTo(out, v);
  return out;
}

}  // namespace toonbench
