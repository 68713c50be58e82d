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

bool IsWs(uint8_t b) { return b == ' ' || b == '\t' || b == '\n' || b == '\r'; }

bool Structural(Lex lex) {
  switch (lex) {
    case Lex::kJObjOpen: case Lex::kJAfterKey: case Lex::kJValue: case Lex::kJArrOpen:
    case Lex::kJAfterValue: case Lex::kJKeyNext:
      return true;
    default:
      return false;
  }
}

int HexValue(uint8_t b) {
  if (b >= '0' && b <= '9') return b - '0';
  if (b >= 'a' && b <= 'f') return b - 'a' + 10;
  if (b >= 'A' && b <= 'F') return b - 'A' + 10;
  return -1;
}

// Range of code units reachable from `digits` hex digits of `value`.
void UnitRange(uint16_t value, uint8_t digits, uint32_t* lo, uint32_t* hi) {
  uint32_t scale = 1u << (4 * (4 - digits));
  *lo = static_cast<uint32_t>(value) * scale;
  *hi = *lo + scale - 1;
}

bool ForcedHigh(uint16_t value, uint8_t digits) {
  uint32_t lo, hi;
  UnitRange(value, digits, &lo, &hi);
  return lo >= 0xD800 && hi <= 0xDBFF;
}

uint32_t StringMinFinish(const Cursor& c) {
  switch (c.lex) {
    case Lex::kJString:
      return c.surrogate == 1 ? 6 : static_cast<uint32_t>(Utf8Pending(c.scalar.utf8));
    case Lex::kJEscape:
      return c.surrogate == 2 ? 5 : 1;
    case Lex::kJUnicode:
      return 4u - c.uni_digits +
             (c.surrogate == 0 && ForcedHigh(c.uni_value, c.uni_digits) ? 6u : 0u);
    default:
      return 0;
  }
}

const char* CheckStringBudget(const Tables& t, const Cursor& c) {
  if (c.scalar.len + StringMinFinish(c) > MaxScalarLen(t, ValueType::kAny)) return "string too long";
  return nullptr;
}

const char* Push(const Tables& t, Cursor& c, FrameKind kind) {
  if (c.frames.size() >= t.max_frames) return "nesting too deep";
  c.frames.emplace_back(kind);
  c.lex = kind == FrameKind::kJsonObject ? Lex::kJObjOpen : Lex::kJArrOpen;
  return nullptr;
}

void Close(Cursor& c) {
  c.frames.pop_back();
  c.lex = c.frames.empty() ? Lex::kJDone : Lex::kJAfterValue;
}

const char* StartValue(const Tables& t, Cursor& c, uint8_t b) {
  c.scalar = Scalar{};
  if (b == '{') return Push(t, c, FrameKind::kJsonObject);
  if (b == '[') return Push(t, c, FrameKind::kJsonArray);
  if (b == '"') {
    c.lex = Lex::kJString;
    c.surrogate = 0;
    return nullptr;
  }
  if (b == '-' || lex::IsDigit(b)) {
    c.scalar.type = ValueType::kFloat;
    c.scalar.num = numeral::Step(numeral::kStart, b);
    c.scalar.len = 1;
    c.lex = Lex::kJNumber;
    uint32_t need = numeral::Accepting(c.scalar.num) ? 0 : 1;
    if (1 + need > MaxScalarLen(t, ValueType::kFloat)) return "number too long";
    return nullptr;
  }
  if (b == 't' || b == 'f' || b == 'n') {
    c.scalar.lit = literal::Step(0, b);
    c.lex = Lex::kJLiteral;
    return nullptr;
  }
  return "expected a value";
}

const char* KeyByte(const Tables& t, Cursor& c, uint8_t b) {
  Frame& f = c.frames.back();
  if (b == '"') {
    if (c.scalar.utf8 != 0) return "invalid UTF-8";
    if (KeyListContains(f.keys, c.key)) return "duplicate key";
    f.keys = KeyListAdd(f.keys, std::move(c.key));
    ++f.fields;
    c.key.clear();
    c.scalar = Scalar{};
    c.lex = Lex::kJAfterKey;
    return nullptr;
  }
  if (b == '\\') return "escapes are not allowed in keys";
  if (b < 0x20 || b == 0x7F) return "control character in key";
  if (!lex::Utf8Validator::Step(c.scalar.utf8, b)) return "invalid UTF-8";
  c.key.push_back(static_cast<char>(b));
  auto max_key = static_cast<uint32_t>(t.limits.max_key_bytes);
  if (c.key.size() + static_cast<size_t>(Utf8Pending(c.scalar.utf8)) > max_key) return "key too long";
  if (!KeyPrefixViable(f.keys, c.key, c.scalar.utf8, max_key, false)) return "duplicate key";
  return nullptr;
}

const char* BeginKey(const Tables& t, Cursor& c) {
  c.key.clear();
  c.scalar = Scalar{};
  c.lex = Lex::kJKey;
  if (!KeyPrefixViable(c.frames.back().keys, "", 0, static_cast<uint32_t>(t.limits.max_key_bytes),
                       false)) {
    return "no unused key remains";
  }
  return nullptr;
}

const char* StringByte(const Tables& t, Cursor& c, uint8_t b) {
  Scalar& s = c.scalar;
  if (c.surrogate == 1) {
    if (b != '\\') return "expected a low surrogate escape";
    c.surrogate = 2;
  } else if (b == '"') {
    if (s.utf8 != 0) return "invalid UTF-8";
    c.scalar = Scalar{};
    c.lex = Lex::kJAfterValue;
    return nullptr;
  } else if (b == '\\') {
    if (s.utf8 != 0) return "invalid UTF-8";
  } else if (b < 0x20) {
    return "control character in string";
  } else if (!lex::Utf8Validator::Step(s.utf8, b)) {
    return "invalid UTF-8";
  }
  ++s.len;
  if (b == '\\') c.lex = Lex::kJEscape;
  return CheckStringBudget(t, c);
}

const char* EscapeByte(const Tables& t, Cursor& c, uint8_t b) {
  if (c.surrogate == 2) {
    if (b != 'u') return "expected a low surrogate escape";
    c.surrogate = 3;
  } else if (b != 'u') {
    switch (b) {
      case '"': case '\\': case '/': case 'b': case 'f': case 'n': case 'r': case 't':
        break;
      default:
        return "invalid escape";
    }
  }
  ++c.scalar.len;
  if (b == 'u') {
    c.lex = Lex::kJUnicode;
    c.uni_digits = 0;
    c.uni_value = 0;
  } else {
    c.lex = Lex::kJString;
  }
  return CheckStringBudget(t, c);
}

const char* UnicodeByte(const Tables& t, Cursor& c, uint8_t b) {
  int h = HexValue(b);
  if (h < 0) return "expected a hex digit";
  auto value = static_cast<uint16_t>(c.uni_value * 16 + h);
  auto digits = static_cast<uint8_t>(c.uni_digits + 1);
  uint32_t lo, hi;
  UnitRange(value, digits, &lo, &hi);
  if (c.surrogate == 3) {
    if (hi < 0xDC00 || lo > 0xDFFF) return "expected a low surrogate";
  } else if (lo >= 0xDC00 && hi <= 0xDFFF) {
    return "unpaired low surrogate";
  }
  c.uni_value = value;
  c.uni_digits = digits;
  ++c.scalar.len;
  if (digits == 4) {
    c.surrogate = c.surrogate == 0 && value >= 0xD800 && value <= 0xDBFF ? 1 : 0;
    c.uni_digits = 0;
    c.uni_value = 0;
    c.lex = Lex::kJString;
  }
  return CheckStringBudget(t, c);
}

}  // namespace

const char* JsonStep(const Tables& t, Cursor& c, uint8_t b) {
  bool ws = IsWs(b);
  if (Structural(c.lex) && ws) {
    if (c.ws_run + 1 > static_cast<uint32_t>(t.limits.max_whitespace_run)) return "whitespace run too long";
    ++c.ws_run;
    return nullptr;
  }
  c.ws_run = 0;
  switch (c.lex) {
    case Lex::kJStart:
      if (b != '{') return "document must start with '{'";
      return Push(t, c, FrameKind::kJsonObject);
    case Lex::kJObjOpen:
      if (b == '}') {
        Close(c);
        return nullptr;
      }
      [[fallthrough]];
    case Lex::kJKeyNext:
      if (b != '"') return "expected a key";
      return BeginKey(t, c);
    case Lex::kJKey:
      return KeyByte(t, c, b);
    case Lex::kJAfterKey:
      if (b != ':') return "expected ':'";
      c.lex = Lex::kJValue;
      return nullptr;
    case Lex::kJArrOpen:
      if (b == ']') {
        Close(c);
        return nullptr;
      }
      [[fallthrough]];
    case Lex::kJValue:
      return StartValue(t, c, b);
    case Lex::kJAfterValue: {
      bool object = c.frames.back().kind == FrameKind::kJsonObject;
      if (b == ',') {
        if (object) {
          if (!KeyPrefixViable(c.frames.back().keys, "", 0,
                               static_cast<uint32_t>(t.limits.max_key_bytes), false)) {
            return "no unused key remains";
          }
          c.lex = Lex::kJKeyNext;
        } else {
          c.lex = Lex::kJValue;
        }
        return nullptr;
      }
      if (b == (object ? '}' : ']')) {
        Close(c);
        return nullptr;
      }
      return object ? "expected ',' or '}'" : "expected ',' or ']'";
    }
    case Lex::kJString:
      return StringByte(t, c, b);
    case Lex::kJEscape:
      return EscapeByte(t, c, b);
    case Lex::kJUnicode:
      return UnicodeByte(t, c, b);
    case Lex::kJNumber: {
      if (ws || b == ',' || b == '}' || b == ']') {
        if (!numeral::Accepting(c.scalar.num)) return "number is incomplete";
        c.scalar = Scalar{};
        c.lex = Lex::kJAfterValue;
        return JsonStep(t, c, b);
      }
      Scalar& s = c.scalar;
      s.num = numeral::Step(s.num, b);
      if (s.num == numeral::kDead) return "malformed number";
      if (s.num == numeral::kExpDigits && ++s.exp_digits > 2) return "exponent too long";
      ++s.len;
      if (s.len + (numeral::Accepting(s.num) ? 0u : 1u) > MaxScalarLen(t, ValueType::kFloat)) {
        return "number too long";
      }
      return nullptr;
    }
    case Lex::kJLiteral:
      c.scalar.lit = literal::Step(c.scalar.lit, b);
      if (c.scalar.lit == literal::kDead) return "expected true, false or null";
      if (literal::Complete(c.scalar.lit)) {
        c.scalar = Scalar{};
        c.lex = Lex::kJAfterValue;
      }
      return nullptr;
    case Lex::kJDone:
      return "content after the end of the document";
    default:
      return "not a JSON state";
  }
}

bool JsonAccepting(const Cursor& c) { return c.lex == Lex::kJDone; }

}  // namespace toonbench::grammar_internal
