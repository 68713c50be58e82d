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

#ifndef TOONBENCH_SRC_GRAMMAR_INTERNAL_H_
#define TOONBENCH_SRC_GRAMMAR_INTERNAL_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "toonbench/grammar.h"

namespace toonbench::grammar_internal {

// Schema-mode tables. Every schema node (scalar or container) gets an id.
enum class Follow : uint8_t {
  kValue,      // `key: ` then a scalar of the node's type
  kObjectEol,  // `key:` then end of line; children form the node's object
  kCount,      // `key[` then the count of the node's array
  kEol,        // end of an array header
};

struct LiteralRule {
  std::string bytes;
  Follow follow;
  int32_t node;
};

struct FieldRule {
  int32_t child;
  int32_t literal;
};

struct NodeRule {
  explicit NodeRule(Schema::Kind k) : kind(k) {}
  Schema::Kind kind;
  std::vector<FieldRule> fields;  // object
  int32_t element = -1;           // array
  bool tabular = false;           // array of all-scalar objects
  int32_t header_literal = -1;    // tabular: `{a,b}:`
};

struct Tables {
  GrammarMode mode;
  GrammarLimits limits;
  bool schema = false;
  int32_t root = -1;
  int32_t colon_literal = -1;  // `:` ending a list or empty-array header
  size_t max_frames = 0;
  std::vector<NodeRule> nodes;
  std::vector<LiteralRule> literals;
};

enum class Lex : uint8_t {
  // TOON
  kLineStart,
  kKey,
  kLit,
  kAfterColon,
  kValStart,
  kValUnquoted,
  kValQuoted,
  kValEscape,
  kValQuotedEnd,
  kCount,
  kAfterCount,
  kHeaderName,
  kHeaderClose,
  kEol,
  kItemDash,
  kItemHead,
  kItemIdent,
  // JSON
  kJStart,
  kJObjOpen,
  kJKey,
  kJAfterKey,
  kJValue,
  kJArrOpen,
  kJAfterValue,
  kJKeyNext,
  kJString,
  kJEscape,
  kJUnicode,
  kJNumber,
  kJLiteral,
  kJDone,
};

enum class FrameKind : uint8_t { kObject, kList, kTabular, kJsonObject, kJsonArray };
enum class ValueType : uint8_t { kAny, kInt, kFloat, kBool, kStr };
enum class ValueCtx : uint8_t { kField, kItem, kCell };
enum class Pending : uint8_t { kNone, kObject, kList, kTabular };

// Persistent list of keys already used in one object.
struct KeyNode {
  std::string key;
  std::shared_ptr<const KeyNode> next;
};
using KeyList = std::shared_ptr<const KeyNode>;

struct Frame {
  explicit Frame(FrameKind k) : kind(k) {}
  FrameKind kind;
  uint16_t level = 0;     // TOON indentation level of the children
  int32_t node = -1;      // schema node (object, or array for list/tabular)
  uint32_t remaining = 0; // list/tabular rows still owed
  uint16_t arity = 0;     // tabular cells per row
  uint16_t fields = 0;    // object fields seen
  KeyList keys;           // unconstrained objects
};

// Scalar lexeme trackers shared by TOON values and JSON numbers/literals.
struct Scalar {
  ValueType type = ValueType::kAny;
  ValueCtx ctx = ValueCtx::kField;
  uint32_t len = 0;
  uint8_t utf8 = 0;
  uint8_t num = 0;         // numeral DFA
  uint8_t lit = 0;         // true/false/null DFA
  uint8_t exp_digits = 0;
  bool last_space = false;
};

struct Cursor {
  Lex lex = Lex::kLineStart;
  std::vector<Frame> frames;

  // TOON line state.
  uint16_t line_level = 0;
  uint32_t spaces = 0;
  Scalar scalar;
  bool scalar_alive = false;  // kItemIdent: the head may still be a scalar
  uint16_t cell = 0;
  std::string key;
  KeyList header_keys;
  uint16_t header_count = 0;
  int32_t lit_id = -1;
  uint32_t lit_pos = 0;
  uint32_t count = 0;
  uint8_t count_digits = 0;
  int32_t array_node = -1;
  bool item = false;          // the line opens an object list item
  KeyList item_keys;
  int32_t item_node = -1;
  Pending pending = Pending::kNone;
  uint32_t pending_count = 0;
  uint16_t pending_arity = 0;
  int32_t pending_node = -1;

  // JSON state.
  uint32_t ws_run = 0;
  uint8_t uni_digits = 0;
  uint16_t uni_value = 0;
  uint8_t surrogate = 0;  // 0 none, 1 want '\', 2 want 'u', 3 low digits
};

Cursor InitialCursor(const Tables& t);

// Byte steps; return nullptr on success or a static reason.
const char* ToonStep(const Tables& t, Cursor& c, uint8_t b);
const char* JsonStep(const Tables& t, Cursor& c, uint8_t b);
bool ToonAccepting(const Tables& t, const Cursor& c);
bool JsonAccepting(const Cursor& c);

void Serialize(const Cursor& c, uint32_t horizon, const Tables& t, std::string* out);

// Helpers shared by both automata.
int Utf8Pending(uint8_t utf8_state);
uint32_t MaxScalarLen(const Tables& t, ValueType type);
namespace numeral {
inline constexpr uint8_t kStart = 0, kMinus = 1, kZero = 2, kInt = 3, kDot = 4, kFrac = 5,
                         kExp = 6, kExpSign = 7, kExpDigits = 8, kDead = 255;
uint8_t Step(uint8_t state, uint8_t b);
inline bool Accepting(uint8_t s) { return s == kZero || s == kInt || s == kFrac || s == kExpDigits; }
}  // namespace numeral

namespace literal {
// 0 start; otherwise an index into "true", "false", "null" progress.
inline constexpr uint8_t kDead = 255;
uint8_t Step(uint8_t state, uint8_t b);
bool Complete(uint8_t state);
bool CompleteBool(uint8_t state);
int Remaining(uint8_t state);  // bytes to completion; -1 if dead or start
}  // namespace literal

// Number of byte strings over an alphabet described by the count of valid
// 1..4-byte characters, of total length at most `budget`, saturating.
uint64_t CountStrings(const uint64_t per_len[4], uint32_t budget);

// Whether some key with prefix `prefix` (length at most max_len, finishing
// the pending UTF-8 sequence first) is not yet in `keys`.
bool KeyPrefixViable(const KeyList& keys, std::string_view prefix, uint8_t utf8_state,
                     uint32_t max_len, bool identifier_alphabet);

bool KeyListContains(const KeyList& keys, std::string_view key);
size_t KeyListSize(const KeyList& keys);
KeyList KeyListAdd(const KeyList& keys, std::string key);

}  // namespace toonbench::grammar_internal

#endif  // TOONBENCH_SRC_GRAMMAR_INTERNAL_H_
