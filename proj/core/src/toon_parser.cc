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

#include <limits>
#include <unordered_set>

#include "lexing.h"
#include "toonbench/json.h"
#include "toonbench/toon.h"

namespace toonbench {

std::string_view ToonErrorKindName(ToonErrorKind kind) {
  switch (kind) {
    case ToonErrorKind::kBadIndent: return "bad-indent";
    case ToonErrorKind::kCountMismatch: return "count-mismatch";
    case ToonErrorKind::kArityMismatch: return "arity-mismatch";
    case ToonErrorKind::kBadEscape: return "bad-escape";
    case ToonErrorKind::kUnexpectedToken: return "unexpected-token";
    case ToonErrorKind::kMissingFence: return "missing-fence";
  }
  return "?";
}

ToonError::ToonError(ToonErrorKind kind, int line, int column, const std::string& detail)
    : Error(std::string(ToonErrorKindName(kind)) + " at line " + std::to_string(line) +
            ", column " + std::to_string(column) + ": " + detail),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(detail) {}

namespace {

constexpr size_t kMaxDeclaredCount = 100'000'000;

struct Line {
  int number;         // 1-based
  int indent;         // leading spaces
  int level;          // indent / 2
  std::string_view content;  // after indentation, trailing blanks removed
};

bool IsBareKeyChar(uint8_t c) {
  switch (c) {
    case ':': case '[': case ']': case '{': case '}': case ',': case '"':
    case ' ': case '\t':
      return false;
    default:
      return c >= 0x20 && c != 0x7F;
  }
}

Value LexScalar(std::string_view raw) {
  if (raw == "true") return Value(true);
  if (raw == "false") return Value(false);
  if (raw == "null") return Value();
  auto shape = lex::ClassifyNumeral(raw);
  if (shape != lex::NumeralShape::kNone) {
    if (auto v = lex::NumeralToValue(raw, shape)) return *std::move(v);
  }
  return Value(std::string(raw));
}

std::string_view TrimBlanks(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

struct ArrayHeader {
  size_t count = 0;
  bool tabular = false;
  std::vector<std::string> headers;
  int count_column = 0;
};

class ToonParser {
 public:
  explicit ToonParser(std::string_view text) : text_(text) {}

  ToonDocument Parse() {
    CheckUtf8();
    SplitLines();
    ToonDocument doc;
    Object root;
    std::unordered_set<std::string> keys;
    if (!lines_.empty() && lines_[0].level != 0) {
      Fail(ToonErrorKind::kBadIndent, lines_[0], 0, "first line must not be indented");
    }
    ParseObjectBody(0, root, keys);
    doc.root = Value(std::move(root));
    doc.arrays = std::move(arrays_);
    return doc;
  }

 private:
  [[noreturn]] void Fail(ToonErrorKind kind, const Line& line, size_t offset,
                         const std::string& detail) const {
    int column = line.indent + static_cast<int>(offset) + 1;
    throw ToonError(kind, line.number, column, detail);
  }

  void CheckUtf8() const {
    uint8_t state = lex::Utf8Validator::kAccept;
    int line = 1, column = 1;
    for (char ch : text_) {
      auto c = static_cast<uint8_t>(ch);
      if (!lex::Utf8Validator::Step(state, c)) {
        throw ToonError(ToonErrorKind::kUnexpectedToken, line, column, "invalid UTF-8");
      }
      if (c == '\n') {
        ++line;
        column = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++column;
      }
    }
    if (state != lex::Utf8Validator::kAccept) {
      throw ToonError(ToonErrorKind::kUnexpectedToken, line, std::max(1, column - 1),
                      "truncated UTF-8 sequence");
    }
  }

  void SplitLines() {
    size_t start = 0;
    int number = 0;
    while (start <= text_.size()) {
      size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view raw = text_.substr(start, end - start);
      ++number;
      start = end + 1;
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      size_t indent = 0;
      while (indent < raw.size() && raw[indent] == ' ') ++indent;
      std::string_view rest = raw.substr(indent);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.remove_suffix(1);
      size_t lead_tab = 0;
      while (lead_tab < rest.size() && (rest[lead_tab] == '\t' || rest[lead_tab] == ' ')) ++lead_tab;
      if (lead_tab == rest.size()) continue;  // blank line
      Line line{number, static_cast<int>(indent), static_cast<int>(indent / 2), rest};
      if (lead_tab > 0) {
        Fail(ToonErrorKind::kBadIndent, line, 0, "tab characters are not allowed in indentation");
      }
      if (indent % 2 != 0) {
        Line at_start{number, 0, 0, raw};
        Fail(ToonErrorKind::kBadIndent, at_start, indent - 1,
             "indentation must be a multiple of 2 spaces, found " + std::to_string(indent));
      }
      lines_.push_back(line);
      if (end == text_.size()) break;
    }
  }

  // Parses a double-quoted string starting at s[pos] == '"'. Advances pos past
  // the closing quote.
  std::string ParseQuoted(const Line& line, std::string_view s, size_t& pos) const {
    size_t open = pos++;
    std::string out;
    while (true) {
      if (pos >= s.size()) Fail(ToonErrorKind::kUnexpectedToken, line, open, "unterminated string");
      char c = s[pos];
      if (c == '"') {
        ++pos;
        return out;
      }
      if (c == '\\') {
        if (pos + 1 >= s.size()) Fail(ToonErrorKind::kBadEscape, line, pos, "dangling backslash");
        char e = s[pos + 1];
        switch (e) {
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case 'n': out.push_back('\n'); break;
          case 'r': out.push_back('\r'); break;
          case 't': out.push_back('\t'); break;
          default:
            Fail(ToonErrorKind::kBadEscape, line, pos,
                 std::string("unsupported escape '\\") + e + "' (allowed: \\\" \\\\ \\n \\r \\t)");
        }
        pos += 2;
        continue;
      }
      out.push_back(c);
      ++pos;
    }
  }

  void SkipSpaces(std::string_view s, size_t& pos) const {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  }

  // A key at s[pos]: quoted or bare. Returns false (pos unchanged) when no key
  // followed by ':' or '[' is present.
  bool TryParseKey(const Line& line, std::string_view s, size_t& pos, std::string& key) const {
    size_t p = pos;
    if (p < s.size() && s[p] == '"') {
      std::string k = ParseQuoted(line, s, p);
      if (p < s.size() && (s[p] == ':' || s[p] == '[')) {
        key = std::move(k);
        pos = p;
        return true;
      }
      return false;
    }
    while (p < s.size() && IsBareKeyChar(static_cast<uint8_t>(s[p]))) ++p;
    if (p == pos || p == s.size() || (s[p] != ':' && s[p] != '[')) return false;
    key.assign(s.substr(pos, p - pos));
    pos = p;
    return true;
  }

  // One scalar occupying the rest of the line.
  Value ParseLineScalar(const Line& line, std::string_view s, size_t pos) const {
    SkipSpaces(s, pos);
    if (pos < s.size() && s[pos] == '"') {
      std::string str = ParseQuoted(line, s, pos);
      SkipSpaces(s, pos);
      if (pos != s.size()) {
        Fail(ToonErrorKind::kUnexpectedToken, line, pos, "unexpected text after quoted string");
      }
      return Value(std::move(str));
    }
    return LexScalar(TrimBlanks(s.substr(pos)));
  }

  // Comma-separated scalars from s[pos] to end of line.
  std::vector<Value> ParseCells(const Line& line, std::string_view s, size_t pos) const {
    std::vector<Value> cells;
    while (true) {
      SkipSpaces(s, pos);
      if (pos < s.size() && s[pos] == '"') {
        cells.emplace_back(ParseQuoted(line, s, pos));
        SkipSpaces(s, pos);
        if (pos < s.size() && s[pos] != ',') {
          Fail(ToonErrorKind::kUnexpectedToken, line, pos, "expected ',' after quoted cell");
        }
      } else {
        size_t end = s.find(',', pos);
        if (end == std::string_view::npos) end = s.size();
        cells.push_back(LexScalar(TrimBlanks(s.substr(pos, end - pos))));
        pos = end;
      }
      if (pos >= s.size()) return cells;
      ++pos;  // ','
    }
  }

  ArrayHeader ParseArrayHeader(const Line& line, std::string_view s, size_t& pos) const {
    ArrayHeader h;
    ++pos;  // '['
    size_t digits = pos;
    h.count_column = static_cast<int>(pos);
    while (pos < s.size() && lex::IsDigit(s[pos])) ++pos;
    if (pos == digits) Fail(ToonErrorKind::kUnexpectedToken, line, digits, "expected array count");
    if (pos - digits > 9) Fail(ToonErrorKind::kUnexpectedToken, line, digits, "array count too large");
    h.count = std::stoul(std::string(s.substr(digits, pos - digits)));
    if (h.count > kMaxDeclaredCount) {
      Fail(ToonErrorKind::kUnexpectedToken, line, digits, "array count too large");
    }
    if (pos >= s.size() || s[pos] != ']') Fail(ToonErrorKind::kUnexpectedToken, line, pos, "expected ']'");
    ++pos;
    if (pos < s.size() && s[pos] == '{') {
      h.tabular = true;
      ++pos;
      std::unordered_set<std::string> seen;
      while (true) {
        SkipSpaces(s, pos);
        std::string name;
        size_t at = pos;
        if (pos < s.size() && s[pos] == '"') {
          name = ParseQuoted(line, s, pos);
        } else {
          while (pos < s.size() && IsBareKeyChar(static_cast<uint8_t>(s[pos]))) ++pos;
          if (pos == at) Fail(ToonErrorKind::kUnexpectedToken, line, at, "expected field name");
          name.assign(s.substr(at, pos - at));
        }
        if (!seen.insert(name).second) {
          Fail(ToonErrorKind::kUnexpectedToken, line, at, "duplicate field name '" + name + "'");
        }
        h.headers.push_back(std::move(name));
        SkipSpaces(s, pos);
        if (pos < s.size() && s[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < s.size() && s[pos] == '}') {
          ++pos;
          break;
        }
        Fail(ToonErrorKind::kUnexpectedToken, line, std::min(pos, s.size() - 1),
             "expected ',' or '}' in field list");
      }
    }
    if (pos >= s.size() || s[pos] != ':') {
      Fail(ToonErrorKind::kUnexpectedToken, line, std::min(pos, s.size() - 1),
           "expected ':' after array header");
    }
    ++pos;
    return h;
  }

  // Lines at `level` are fields of `out`.
  void ParseObjectBody(int level, Object& out, std::unordered_set<std::string>& keys) {
    while (next_ < lines_.size()) {
      const Line& line = lines_[next_];
      if (line.level < level) return;
      if (line.level > level) {
        Fail(ToonErrorKind::kBadIndent, line, 0,
             "expected indentation of " + std::to_string(level * 2) + " spaces, found " +
                 std::to_string(line.indent));
      }
      ++next_;
      if (line.content == "-" || line.content.substr(0, 2) == "- ") {
        Fail(ToonErrorKind::kUnexpectedToken, line, 0, "list item outside of an array");
      }
      ParseField(line, 0, level, out, keys);
    }
  }

  // A `key...` field beginning at line.content[pos]; the field's children sit
  // at level + 1.
  void ParseField(const Line& line, size_t pos, int level, Object& out,
                  std::unordered_set<std::string>& keys) {
    std::string_view s = line.content;
    std::string key;
    size_t key_pos = pos;
    if (!TryParseKey(line, s, pos, key)) {
      Fail(ToonErrorKind::kUnexpectedToken, line, key_pos, "expected 'key: value' or 'key[N]:'");
    }
    if (!keys.insert(key).second) {
      Fail(ToonErrorKind::kUnexpectedToken, line, key_pos, "duplicate key '" + key + "'");
    }
    path_.emplace_back(key);
    Value v;
    if (s[pos] == ':') {
      ++pos;
      if (pos == s.size()) {
        Object child;
        std::unordered_set<std::string> child_keys;
        ParseObjectBody(level + 1, child, child_keys);
        v = Value(std::move(child));
      } else {
        v = ParseLineScalar(line, s, pos);
      }
    } else {
      v = ParseArray(line, s, pos, level + 1);
    }
    path_.pop_back();
    out.push_back(Member{std::move(key), std::move(v)});
  }

  // Array header at s[pos] == '['; items sit at child_level.
  Value ParseArray(const Line& line, std::string_view s, size_t pos, int child_level) {
    ArrayHeader h = ParseArrayHeader(line, s, pos);
    SkipSpaces(s, pos);
    size_t slot = arrays_.size();
    arrays_.push_back(ArrayInfo{path_, ArrayLayout::kList, h.headers, h.count, line.number});
    Array items;
    if (h.tabular) {
      arrays_[slot].layout = ArrayLayout::kTabular;
      if (pos != s.size()) {
        Fail(ToonErrorKind::kUnexpectedToken, line, pos, "unexpected text after tabular header");
      }
      while (next_ < lines_.size() && lines_[next_].level >= child_level) {
        const Line& row = lines_[next_];
        if (row.level > child_level) {
          Fail(ToonErrorKind::kBadIndent, row, 0,
               "tabular rows must be indented " + std::to_string(child_level * 2) + " spaces");
        }
        ++next_;
        std::vector<Value> cells = ParseCells(row, row.content, 0);
        if (cells.size() != h.headers.size()) {
          Fail(ToonErrorKind::kArityMismatch, row, 0,
               "row has " + std::to_string(cells.size()) + " cells but the header declares " +
                   std::to_string(h.headers.size()) + " fields");
        }
        Object obj;
        for (size_t i = 0; i < cells.size(); ++i) obj.push_back(Member{h.headers[i], std::move(cells[i])});
        items.emplace_back(std::move(obj));
      }
    } else if (pos != s.size()) {
      arrays_[slot].layout = ArrayLayout::kInline;
      for (Value& cell : ParseCells(line, s, pos)) items.push_back(std::move(cell));
    } else {
      while (next_ < lines_.size() && lines_[next_].level >= child_level) {
        const Line& item = lines_[next_];
        if (item.level > child_level) {
          Fail(ToonErrorKind::kBadIndent, item, 0,
               "list items must be indented " + std::to_string(child_level * 2) + " spaces");
        }
        ++next_;
        path_.emplace_back(items.size());
        items.push_back(ParseListItem(item, child_level));
        path_.pop_back();
      }
    }
    if (items.size() != h.count) {
      Fail(ToonErrorKind::kCountMismatch, line, h.count_column,
           "declared [" + std::to_string(h.count) + "] but found " + std::to_string(items.size()) +
               (h.tabular ? " rows" : " items"));
    }
    return Value(std::move(items));
  }

  Value ParseListItem(const Line& line, int level) {
    std::string_view s = line.content;
    if (s[0] != '-') Fail(ToonErrorKind::kUnexpectedToken, line, 0, "expected '- ' list item");
    if (s.size() == 1) return Value(Object{});
    if (s[1] != ' ') Fail(ToonErrorKind::kUnexpectedToken, line, 1, "expected a space after '-'");
    size_t pos = 2;
    SkipSpaces(s, pos);
    if (s[pos] == '[') return ParseArray(line, s, pos, level + 1);
    std::string key;
    size_t probe = pos;
    if (TryParseKey(line, s, probe, key)) {
      Object obj;
      std::unordered_set<std::string> keys;
      ParseField(line, pos, level + 1, obj, keys);
      ParseObjectBody(level + 1, obj, keys);
      return Value(std::move(obj));
    }
    return ParseLineScalar(line, s, pos);
  }

  std::string_view text_;
  std::vector<Line> lines_;
  size_t next_ = 0;
  Path path_;
  std::vector<ArrayInfo> arrays_;
};

}  // namespace

ToonDocument ParseToon(std::string_view text) { return ToonParser(text).Parse(); }

std::string ToonToJson(std::string_view text) { return EmitCanonicalJson(ParseToon(text).root); }

std::string ExtractToonBlock(std::string_view llm_output) {
  return ExtractToonBlock(llm_output, nullptr);
}

namespace {

// Body of the first fence whose info string equals `lang`.
std::optional<std::string> FindFence(std::string_view text, std::string_view lang) {
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = TrimBlanks(text.substr(pos, eol - pos));
    if (!line.empty() && line.back() == '\r') line = TrimBlanks(line.substr(0, line.size() - 1));
    if (line.substr(0, 3) == "```" && TrimBlanks(line.substr(3)) == lang) {
      size_t body = eol + 1;
      if (body > text.size()) return std::string();
      size_t scan = body;
      while (scan < text.size()) {
        size_t end = text.find('\n', scan);
        if (end == std::string_view::npos) end = text.size();
        std::string_view l = TrimBlanks(text.substr(scan, end - scan));
        if (l.substr(0, 3) == "```") {
          std::string_view content = text.substr(body, scan - body);
          if (!content.empty() && content.back() == '\n') content.remove_suffix(1);
          if (!content.empty() && content.back() == '\r') content.remove_suffix(1);
          return std::string(content);
        }
        scan = end + 1;
      }
      return std::string(text.substr(body));  // unclosed fence: take the rest
    }
    pos = eol + 1;
  }
  return std::nullopt;
}

}  // namespace

std::string ExtractToonBlock(std::string_view llm_output, bool* had_fence) {
  for (std::string_view lang : {"toon", ""}) {
    if (auto body = FindFence(llm_output, lang)) {
      if (had_fence != nullptr) *had_fence = true;
      return *body;
    }
  }
  if (had_fence != nullptr) *had_fence = false;
  try {
    ParseToon(llm_output);
    return std::string(llm_output);
  } catch (const ToonError&) {
    throw ToonError(ToonErrorKind::kMissingFence, 1, 1,
                    "no ```toon code block found and the output is not valid TOON");
  }
}

}  // namespace toonbench
