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

#include "grammar_internal.h"
#include "lexing.h"

namespace toonbench::grammar_internal {
namespace {

using lex::IsIdentChar;
using lex::IsIdentStart;

ValueType TypeOf(Schema::Kind kind) {
  switch (kind) {
    case Schema::Kind::kInt: return ValueType::kInt;
    case Schema::Kind::kFloat: return ValueType::kFloat;
    case Schema::Kind::kBool: return ValueType::kBool;
    case Schema::Kind::kStr: return ValueType::kStr;
    default: return ValueType::kAny;
  }
}

// Unquoted scalar lexemes.

bool Terminable(const Scalar& s) {
  if (s.len == 0) return false;
  switch (s.type) {
    case ValueType::kInt: return s.num == numeral::kZero || s.num == numeral::kInt;
    case ValueType::kFloat: return numeral::Accepting(s.num);
    case ValueType::kBool: return literal::CompleteBool(s.lit);
    case ValueType::kStr:
      return s.utf8 == 0 && !s.last_space && !numeral::Accepting(s.num) &&
             !literal::Complete(s.lit);
    case ValueType::kAny: return s.utf8 == 0 && !s.last_space;
  }
  return false;
}

uint32_t MinFinish(const Scalar& s) {
  if (int pending = Utf8Pending(s.utf8)) return static_cast<uint32_t>(pending);
  if (s.type == ValueType::kBool) return static_cast<uint32_t>(std::max(literal::Remaining(s.lit), 0));
  return Terminable(s) ? 0 : 1;
}

const char* ScalarStep(const Tables& t, Scalar& s, uint8_t b) {
  if (b < 0x20 || b == 0x7F) return "control character in value";
  if (s.len == 0 && b == ' ') return "value starts with a space";
  if (s.ctx == ValueCtx::kCell && b == ',') return "',' inside an unquoted cell";
  if (s.ctx == ValueCtx::kItem && (b == ':' || b == '[')) return "':' or '[' in an unquoted item";
  if (!lex::Utf8Validator::Step(s.utf8, b)) return "invalid UTF-8";
  s.num = numeral::Step(s.num, b);
  if (s.num == numeral::kExpDigits) ++s.exp_digits;
  s.lit = literal::Step(s.lit, b);
  s.last_space = b == ' ';
  ++s.len;
  switch (s.type) {
    case ValueType::kInt:
      if (s.num != numeral::kMinus && s.num != numeral::kZero && s.num != numeral::kInt) {
        return "expected an integer";
      }
      break;
    case ValueType::kFloat:
      if (s.num == numeral::kDead) return "expected a number";
      if (s.exp_digits > 2) return "exponent too long";
      break;
    case ValueType::kBool:
      if (s.lit == literal::kDead || s.lit >= 10) return "expected true or false";
      break;
    default:
      break;
  }
  if (s.len + MinFinish(s) > MaxScalarLen(t, s.type)) return "value too long";
  return nullptr;
}

bool FrameAccepts(const Tables& t, const Frame& f) {
  if (f.kind == FrameKind::kObject) {
    return !t.schema || f.fields < t.nodes[static_cast<size_t>(f.node)].fields.size();
  }
  return f.remaining > 0;
}

bool FrameClosable(const Tables& t, const Frame& f) {
  if (f.kind == FrameKind::kObject) {
    return t.schema ? f.fields == t.nodes[static_cast<size_t>(f.node)].fields.size() : f.fields >= 1;
  }
  return f.remaining == 0;
}

bool AllClosable(const Tables& t, const Cursor& c) {
  for (const Frame& f : c.frames) {
    if (!FrameClosable(t, f)) return false;
  }
  return true;
}

bool Room(const Tables& t, const Cursor& c, size_t pushes) {
  return c.frames.size() + pushes <= t.max_frames;
}

ValueType CellType(const Tables& t, const Frame& f, uint16_t cell) {
  if (!t.schema) return ValueType::kAny;
  const NodeRule& elem = t.nodes[static_cast<size_t>(t.nodes[static_cast<size_t>(f.node)].element)];
  return TypeOf(t.nodes[static_cast<size_t>(elem.fields[cell].child)].kind);
}

void BeginValue(Cursor& c, ValueType type, ValueCtx ctx) {
  c.scalar = Scalar{};
  c.scalar.type = type;
  c.scalar.ctx = ctx;
  c.lex = Lex::kValStart;
}

void ResetLine(Cursor& c) {
  c.lex = Lex::kLineStart;
  c.line_level = 0;
  c.spaces = 0;
  c.scalar = Scalar{};
  c.scalar_alive = false;
  c.cell = 0;
  c.key.clear();
  c.header_keys.reset();
  c.header_count = 0;
  c.lit_id = -1;
  c.lit_pos = 0;
  c.count = 0;
  c.count_digits = 0;
  c.array_node = -1;
  c.item = false;
  c.item_keys.reset();
  c.item_node = -1;
  c.pending = Pending::kNone;
  c.pending_count = 0;
  c.pending_arity = 0;
  c.pending_node = -1;
}

const char* EndLine(const Tables& t, Cursor& c) {
  switch (c.lex) {
    case Lex::kEol:
      break;
    case Lex::kAfterColon:
      if (!Room(t, c, (c.item ? 1 : 0) + 1)) return "nesting too deep";
      c.pending = Pending::kObject;
      c.pending_node = -1;
      break;
    case Lex::kValUnquoted:
      if (!Terminable(c.scalar)) return "value is incomplete";
      [[fallthrough]];
    case Lex::kValQuotedEnd:
      if (c.scalar.ctx == ValueCtx::kCell && c.cell + 1 != c.frames.back().arity) {
        return "row has too few cells";
      }
      break;
    case Lex::kItemIdent:
      if (!c.scalar_alive || !Terminable(c.scalar)) return "item is incomplete";
      break;
    default:
      return "line ends early";
  }
  auto level = static_cast<uint16_t>(c.line_level + 1);
  if (c.item) {
    Frame f(FrameKind::kObject);
    f.level = level++;
    f.node = c.item_node;
    f.fields = 1;
    f.keys = c.item_keys;
    c.frames.push_back(std::move(f));
  }
  if (c.pending != Pending::kNone) {
    Frame f(c.pending == Pending::kObject  ? FrameKind::kObject
            : c.pending == Pending::kList ? FrameKind::kList
                                          : FrameKind::kTabular);
    f.level = level;
    f.node = c.pending_node;
    f.remaining = c.pending_count;
    f.arity = c.pending_arity;
    c.frames.push_back(std::move(f));
  }
  ResetLine(c);
  return nullptr;
}

const char* LitStep(const Tables& t, Cursor& c, uint8_t b);

const char* StartLiteral(const Tables& t, Cursor& c, int32_t id, uint8_t b) {
  c.lit_id = id;
  c.lit_pos = 0;
  c.lex = Lex::kLit;
  return LitStep(t, c, b);
}

const char* LitStep(const Tables& t, Cursor& c, uint8_t b) {
  const LiteralRule& lit = t.literals[static_cast<size_t>(c.lit_id)];
  if (static_cast<uint8_t>(lit.bytes[c.lit_pos]) != b) return "byte does not match the schema";
  if (++c.lit_pos < lit.bytes.size()) return nullptr;
  c.lit_id = -1;
  c.lit_pos = 0;
  switch (lit.follow) {
    case Follow::kValue:
      BeginValue(c, TypeOf(t.nodes[static_cast<size_t>(lit.node)].kind), ValueCtx::kField);
      break;
    case Follow::kObjectEol:
      c.lex = Lex::kEol;
      c.pending = Pending::kObject;
      c.pending_node = lit.node;
      break;
    case Follow::kCount:
      c.lex = Lex::kCount;
      c.array_node = lit.node;
      break;
    case Follow::kEol:
      c.lex = Lex::kEol;
      break;
  }
  return nullptr;
}

const char* ValStart(const Tables& t, Cursor& c, uint8_t b) {
  if (b == '"') {
    if (c.scalar.type != ValueType::kAny && c.scalar.type != ValueType::kStr) {
      return "quoted value where a number or boolean is expected";
    }
    c.lex = Lex::kValQuoted;
    return nullptr;
  }
  c.lex = Lex::kValUnquoted;
  return ScalarStep(t, c.scalar, b);
}

const char* NextCell(const Tables& t, Cursor& c) {
  if (c.scalar.ctx != ValueCtx::kCell) return "unexpected ','";
  if (c.lex == Lex::kValUnquoted && !Terminable(c.scalar)) return "value is incomplete";
  const Frame& f = c.frames.back();
  if (c.cell + 1 >= f.arity) return "row has too many cells";
  ++c.cell;
  BeginValue(c, CellType(t, f, c.cell), ValueCtx::kCell);
  return nullptr;
}

const char* QuotedStep(const Tables& t, Cursor& c, uint8_t b) {
  Scalar& s = c.scalar;
  uint32_t max = MaxScalarLen(t, s.type);
  if (b == '"') {
    if (s.utf8 != 0) return "invalid UTF-8";
    c.lex = Lex::kValQuotedEnd;
    return nullptr;
  }
  if (b == '\\') {
    if (s.utf8 != 0) return "invalid UTF-8";
    if (s.len + 2 > max) return "value too long";
    ++s.len;
    c.lex = Lex::kValEscape;
    return nullptr;
  }
  if (b < 0x20) return "control character in quoted value";
  if (!lex::Utf8Validator::Step(s.utf8, b)) return "invalid UTF-8";
  ++s.len;
  if (s.len + static_cast<uint32_t>(Utf8Pending(s.utf8)) > max) return "value too long";
  return nullptr;
}

const char* CountStep(const Tables& t, Cursor& c, uint8_t b) {
  if (lex::IsDigit(b)) {
    if (c.count_digits > 0 && c.count == 0) return "leading zero in count";
    if (c.count_digits >= t.limits.max_count_digits) return "count too long";
    c.count = c.count * 10 + (b - '0');
    ++c.count_digits;
    return nullptr;
  }
  if (b == ']' && c.count_digits > 0) {
    c.lex = Lex::kAfterCount;
    return nullptr;
  }
  return "expected a count";
}

const char* AfterCount(const Tables& t, Cursor& c, uint8_t b) {
  if (t.schema) {
    const NodeRule& arr = t.nodes[static_cast<size_t>(c.array_node)];
    if (c.count == 0) return StartLiteral(t, c, t.colon_literal, b);
    c.pending_count = c.count;
    c.pending_node = c.array_node;
    if (arr.tabular) {
      c.pending = Pending::kTabular;
      c.pending_arity =
          static_cast<uint16_t>(t.nodes[static_cast<size_t>(arr.element)].fields.size());
      return StartLiteral(t, c, arr.header_literal, b);
    }
    c.pending = Pending::kList;
    return StartLiteral(t, c, t.colon_literal, b);
  }
  if (b == ':') {
    c.lex = Lex::kEol;
    if (c.count > 0) {
      c.pending = Pending::kList;
      c.pending_count = c.count;
    }
    return nullptr;
  }
  if (b == '{') {
    c.lex = Lex::kHeaderName;
    c.key.clear();
    return nullptr;
  }
  return "expected ':' or '{'";
}

const char* HeaderStep(const Tables& t, Cursor& c, uint8_t b) {
  auto max_key = static_cast<uint32_t>(t.limits.max_key_bytes);
  if (c.key.empty() ? IsIdentStart(b) : IsIdentChar(b)) {
    std::string next = c.key + static_cast<char>(b);
    if (next.size() > max_key) return "header name too long";
    if (!KeyPrefixViable(c.header_keys, next, 0, max_key, true)) return "duplicate header name";
    c.key = std::move(next);
    return nullptr;
  }
  if ((b == ',' || b == '}') && !c.key.empty()) {
    if (KeyListContains(c.header_keys, c.key)) return "duplicate header name";
    if (b == ',' && c.header_count + 1 >= t.limits.max_header_fields) return "too many header names";
    c.header_keys = KeyListAdd(c.header_keys, std::move(c.key));
    c.key.clear();
    ++c.header_count;
    if (b == '}') c.lex = Lex::kHeaderClose;
    return nullptr;
  }
  return "expected a header name";
}

// Starts the key of an unconstrained object field or list item.
const char* KeyStep(const Tables& t, const KeyList& keys, std::string& key, uint8_t b) {
  auto max_key = static_cast<uint32_t>(t.limits.max_key_bytes);
  std::string next = key + static_cast<char>(b);
  if (next.size() > max_key) return "key too long";
  if (!KeyPrefixViable(keys, next, 0, max_key, true)) return "duplicate key";
  key = std::move(next);
  return nullptr;
}

const char* ItemHead(const Tables& t, Cursor& c, uint8_t b) {
  const Frame& list = c.frames.back();
  if (t.schema) {
    int32_t elem = t.nodes[static_cast<size_t>(list.node)].element;
    const NodeRule& e = t.nodes[static_cast<size_t>(elem)];
    if (e.kind == Schema::Kind::kObject) {
      c.item = true;
      c.item_node = elem;
      return StartLiteral(t, c, e.fields[0].literal, b);
    }
    if (e.kind == Schema::Kind::kArray) {
      if (b != '[') return "expected '['";
      c.lex = Lex::kCount;
      c.array_node = elem;
      return nullptr;
    }
    BeginValue(c, TypeOf(e.kind), ValueCtx::kItem);
    return ValStart(t, c, b);
  }
  if (b == '[') {
    if (!Room(t, c, 1)) return "nesting too deep";
    c.lex = Lex::kCount;
    return nullptr;
  }
  BeginValue(c, ValueType::kAny, ValueCtx::kItem);
  if (IsIdentStart(b) && Room(t, c, 1)) {
    c.key.assign(1, static_cast<char>(b));
    c.scalar_alive = ScalarStep(t, c.scalar, b) == nullptr;
    c.lex = Lex::kItemIdent;
    return nullptr;
  }
  return ValStart(t, c, b);
}

const char* ItemIdent(const Tables& t, Cursor& c, uint8_t b) {
  if (b == ':' || b == '[') {
    if (!Room(t, c, b == ':' ? 1 : 2)) return "nesting too deep";
    c.item = true;
    c.item_keys = KeyListAdd(nullptr, c.key);
    c.key.clear();
    c.scalar = Scalar{};
    c.scalar_alive = false;
    c.lex = b == ':' ? Lex::kAfterColon : Lex::kCount;
    return nullptr;
  }
  if (b == '\n') return EndLine(t, c);
  bool key_ok = IsIdentChar(b) && c.key.size() + 1 <= static_cast<size_t>(t.limits.max_key_bytes);
  Scalar next = c.scalar;
  bool scalar_ok = c.scalar_alive && ScalarStep(t, next, b) == nullptr;
  if (!key_ok && !scalar_ok) return "invalid list item";
  if (key_ok) {
    c.key.push_back(static_cast<char>(b));
    c.scalar_alive = scalar_ok;
    if (scalar_ok) c.scalar = next;
    return nullptr;
  }
  c.key.clear();
  c.scalar = next;
  c.scalar_alive = false;
  c.lex = Lex::kValUnquoted;
  return nullptr;
}

const char* BeginLine(const Tables& t, Cursor& c, uint8_t b) {
  if (b == '\n') return "blank line";
  if (c.spaces % 2 != 0) return "odd indentation";
  uint32_t level = c.spaces / 2;
  int owner = -1;
  for (int i = static_cast<int>(c.frames.size()) - 1; i >= 0; --i) {
    const Frame& f = c.frames[static_cast<size_t>(i)];
    if (f.level == level && FrameAccepts(t, f)) {
      owner = i;
      break;
    }
    if (!FrameClosable(t, f)) break;
  }
  if (owner < 0) return "unexpected indentation";
  c.frames.erase(c.frames.begin() + owner + 1, c.frames.end());
  c.line_level = static_cast<uint16_t>(level);
  Frame& f = c.frames.back();
  switch (f.kind) {
    case FrameKind::kObject:
      if (t.schema) {
        const FieldRule& field = t.nodes[static_cast<size_t>(f.node)].fields[f.fields];
        ++f.fields;
        return StartLiteral(t, c, field.literal, b);
      }
      if (!IsIdentStart(b)) return "expected a key";
      c.lex = Lex::kKey;
      return KeyStep(t, f.keys, c.key, b);
    case FrameKind::kList:
      if (b != '-') return "expected '-'";
      --f.remaining;
      c.lex = Lex::kItemDash;
      return nullptr;
    case FrameKind::kTabular:
      --f.remaining;
      BeginValue(c, CellType(t, f, 0), ValueCtx::kCell);
      return ValStart(t, c, b);
    default:
      return "bad frame";
  }
}

bool SpaceAllowed(const Tables& t, const Cursor& c) {
  for (auto it = c.frames.rbegin(); it != c.frames.rend(); ++it) {
    if (FrameAccepts(t, *it) && 2u * it->level > c.spaces) return true;
    if (!FrameClosable(t, *it)) return false;
  }
  return false;
}

}  // namespace

const char* ToonStep(const Tables& t, Cursor& c, uint8_t b) {
  switch (c.lex) {
    case Lex::kLineStart:
      if (b == ' ') {
        if (!SpaceAllowed(t, c)) return "unexpected indentation";
        ++c.spaces;
        return nullptr;
      }
      return BeginLine(t, c, b);
    case Lex::kKey: {
      Frame& f = c.frames.back();
      if (IsIdentChar(b)) return KeyStep(t, f.keys, c.key, b);
      if (b != ':' && b != '[') return "expected ':' or '['";
      if (KeyListContains(f.keys, c.key)) return "duplicate key";
      if (b == '[' && !Room(t, c, 1)) return "nesting too deep";
      f.keys = KeyListAdd(f.keys, c.key);
      ++f.fields;
      c.key.clear();
      c.lex = b == ':' ? Lex::kAfterColon : Lex::kCount;
      return nullptr;
    }
    case Lex::kLit:
      return LitStep(t, c, b);
    case Lex::kAfterColon:
      if (b == ' ') {
        BeginValue(c, ValueType::kAny, ValueCtx::kField);
        return nullptr;
      }
      if (b == '\n') return EndLine(t, c);
      return "expected ' ' or end of line";
    case Lex::kValStart:
      return ValStart(t, c, b);
    case Lex::kValUnquoted:
      if (b == '\n') return EndLine(t, c);
      if (b == ',' && c.scalar.ctx == ValueCtx::kCell) return NextCell(t, c);
      return ScalarStep(t, c.scalar, b);
    case Lex::kValQuoted:
      return QuotedStep(t, c, b);
    case Lex::kValEscape:
      if (b != '"' && b != '\\' && b != 'n' && b != 'r' && b != 't') return "invalid escape";
      ++c.scalar.len;
      c.lex = Lex::kValQuoted;
      return nullptr;
    case Lex::kValQuotedEnd:
      if (b == '\n') return EndLine(t, c);
      if (b == ',') return NextCell(t, c);
      return "unexpected byte after closing quote";
    case Lex::kCount:
      return CountStep(t, c, b);
    case Lex::kAfterCount:
      return AfterCount(t, c, b);
    case Lex::kHeaderName:
      return HeaderStep(t, c, b);
    case Lex::kHeaderClose:
      if (b != ':') return "expected ':'";
      c.lex = Lex::kEol;
      if (c.count > 0) {
        c.pending = Pending::kTabular;
        c.pending_count = c.count;
        c.pending_arity = c.header_count;
      }
      return nullptr;
    case Lex::kEol:
      return b == '\n' ? EndLine(t, c) : "expected end of line";
    case Lex::kItemDash:
      if (b != ' ') return "expected ' ' after '-'";
      c.lex = Lex::kItemHead;
      return nullptr;
    case Lex::kItemHead:
      return ItemHead(t, c, b);
    case Lex::kItemIdent:
      return ItemIdent(t, c, b);
    default:
      return "not a TOON state";
  }
}

bool ToonAccepting(const Tables& t, const Cursor& c) {
  if (c.lex == Lex::kLineStart) return c.spaces == 0 && AllClosable(t, c);
  Cursor copy = c;
  return EndLine(t, copy) == nullptr && AllClosable(t, copy);
}

}  // namespace toonbench::grammar_internal
