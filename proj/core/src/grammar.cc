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

#include "toonbench/grammar.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>

#include "grammar_internal.h"
#include "lexing.h"
#include "toonbench/toon.h"

namespace toonbench {

namespace grammar_internal {

int Utf8Pending(uint8_t s) {
  using V = lex::Utf8Validator;
  switch (s) {
    case V::kNeed1: return 1;
    case V::kNeed2: case V::kE0: case V::kED: return 2;
    case V::kNeed3: case V::kF0: case V::kF4: return 3;
    default: return 0;
  }
}

uint32_t MaxScalarLen(const Tables& t, ValueType type) {
  auto m = static_cast<uint32_t>(std::max(t.limits.max_scalar_bytes, 0));
  return type == ValueType::kFloat ? std::min<uint32_t>(m, 32) : m;
}

namespace numeral {

uint8_t Step(uint8_t s, uint8_t b) {
  bool digit = lex::IsDigit(b);
  bool exp = b == 'e' || b == 'E';
  switch (s) {
    case kStart:
      if (b == '-') return kMinus;
      [[fallthrough]];
    case kMinus:
      if (b == '0') return kZero;
      return digit ? kInt : kDead;
    case kZero:
      if (b == '.') return kDot;
      return exp ? kExp : kDead;
    case kInt:
      if (digit) return kInt;
      if (b == '.') return kDot;
      return exp ? kExp : kDead;
    case kDot:
      return digit ? kFrac : kDead;
    case kFrac:
      if (digit) return kFrac;
      return exp ? kExp : kDead;
    case kExp:
      if (b == '+' || b == '-') return kExpSign;
      return digit ? kExpDigits : kDead;
    case kExpSign:
    case kExpDigits:
      return digit ? kExpDigits : kDead;
    default:
      return kDead;
  }
}

}  // namespace numeral

namespace literal {
namespace {
// States 1-4 spell "true", 5-9 "false", 10-13 "null".
constexpr std::string_view kSpelling("\0truefalsenull", 14);
}  // namespace

uint8_t Step(uint8_t s, uint8_t b) {
  if (s == 0) {
    if (b == 't') return 1;
    if (b == 'f') return 5;
    if (b == 'n') return 10;
    return kDead;
  }
  if (s == kDead || Complete(s)) return kDead;
  return kSpelling[s + 1] == static_cast<char>(b) ? static_cast<uint8_t>(s + 1) : kDead;
}

bool Complete(uint8_t s) { return s == 4 || s == 9 || s == 13; }
bool CompleteBool(uint8_t s) { return s == 4 || s == 9; }

int Remaining(uint8_t s) {
  if (s == 0 || s == kDead) return -1;
  if (s <= 4) return 4 - s;
  if (s <= 9) return 9 - s;
  return 13 - s;
}

}  // namespace literal

namespace {
constexpr uint64_t kCap = uint64_t{1} << 62;
}  // namespace

uint64_t CountStrings(const uint64_t per_len[4], uint32_t budget) {
  auto sat_mul = [](uint64_t a, uint64_t b) -> uint64_t {
    if (a == 0 || b == 0) return 0;
    return a > kCap / b ? kCap : std::min(a * b, kCap);
  };
  std::vector<uint64_t> n(budget + 1, 0);
  n[0] = 1;
  uint64_t total = 1;
  for (uint32_t k = 1; k <= budget; ++k) {
    uint64_t v = 0;
    for (uint32_t j = 0; j < 4 && j < k; ++j) v = std::min(kCap, v + sat_mul(per_len[j], n[k - 1 - j]));
    n[k] = v;
    total = std::min(kCap, total + v);
    if (total == kCap) break;
  }
  return total;
}

bool KeyListContains(const KeyList& keys, std::string_view key) {
  for (const KeyNode* n = keys.get(); n != nullptr; n = n->next.get()) {
    if (n->key == key) return true;
  }
  return false;
}

size_t KeyListSize(const KeyList& keys) {
  size_t n = 0;
  for (const KeyNode* k = keys.get(); k != nullptr; k = k->next.get()) ++n;
  return n;
}

KeyList KeyListAdd(const KeyList& keys, std::string key) {
  return std::make_shared<const KeyNode>(KeyNode{std::move(key), keys});
}

bool KeyPrefixViable(const KeyList& keys, std::string_view prefix, uint8_t utf8_state,
                     uint32_t max_len, bool identifier_alphabet) {
  static const uint64_t kIdent[4] = {63, 0, 0, 0};
  static const uint64_t kJson[4] = {93, 1920, 61440, 1048576};
  uint64_t seen = 0;
  for (const KeyNode* n = keys.get(); n != nullptr; n = n->next.get()) {
    if (n->key.size() >= prefix.size() && std::string_view(n->key).substr(0, prefix.size()) == prefix) {
      ++seen;
    }
  }
  if (seen == 0) return true;
  uint64_t finish = 1;
  using V = lex::Utf8Validator;
  switch (utf8_state) {
    case V::kNeed1: finish = 64; break;
    case V::kNeed2: finish = 64 * 64; break;
    case V::kNeed3: finish = 64 * 64 * 64; break;
    case V::kE0: case V::kED: finish = 32 * 64; break;
    case V::kF0: finish = 48 * 64 * 64; break;
    case V::kF4: finish = 16 * 64 * 64; break;
    default: break;
  }
  auto used = prefix.size() + static_cast<size_t>(Utf8Pending(utf8_state));
  if (used > max_len) return false;
  uint64_t rest = CountStrings(identifier_alphabet ? kIdent : kJson, static_cast<uint32_t>(max_len - used));
  uint64_t completions = rest > kCap / finish ? kCap : rest * finish;
  return seen < completions;
}

Cursor InitialCursor(const Tables& t) {
  Cursor c;
  if (t.mode == GrammarMode::kJson) {
    c.lex = Lex::kJStart;
  } else {
    Frame root(FrameKind::kObject);
    root.node = t.root;
    c.frames.push_back(root);
  }
  return c;
}

namespace {

class Writer {
 public:
  Writer(std::string* out, uint32_t horizon) : out_(out), horizon_(horizon) {}
  void U(uint64_t v) {
    do {
      out_->push_back(static_cast<char>((v & 0x7F) | (v > 0x7F ? 0x80 : 0)));
      v >>= 7;
    } while (v != 0);
  }
  void Clamped(uint64_t v) { U(std::min<uint64_t>(v, horizon_)); }
  void S(std::string_view s) {
    U(s.size());
    out_->append(s);
  }
  void Keys(const KeyList& keys) {
    U(KeyListSize(keys));
    for (const KeyNode* n = keys.get(); n != nullptr; n = n->next.get()) S(n->key);
  }

 private:
  std::string* out_;
  uint32_t horizon_;
};

}  // namespace

void Serialize(const Cursor& c, uint32_t horizon, const Tables& t, std::string* out) {
  Writer w(out, horizon);
  w.U(static_cast<uint8_t>(c.lex));
  w.U(c.frames.size());
  for (const Frame& f : c.frames) {
    w.U(static_cast<uint8_t>(f.kind));
    w.U(f.level);
    w.U(static_cast<uint64_t>(f.node + 1));
    w.Clamped(f.remaining);
    w.U(f.arity);
    w.U(f.fields);
    w.Keys(f.keys);
  }
  w.U(c.line_level);
  w.U(c.spaces);
  const Scalar& s = c.scalar;
  w.U(static_cast<uint8_t>(s.type));
  w.U(static_cast<uint8_t>(s.ctx));
  uint32_t cap = MaxScalarLen(t, s.type);
  w.Clamped(cap >= s.len ? cap - s.len : 0);
  w.U(s.len == 0 ? 0 : 1);
  w.U(s.utf8);
  w.U(s.num);
  w.U(s.lit);
  w.U(s.exp_digits);
  w.U(s.last_space);
  w.U(c.scalar_alive);
  w.U(c.cell);
  w.S(c.key);
  w.Keys(c.header_keys);
  w.U(c.header_count);
  w.U(static_cast<uint64_t>(c.lit_id + 1));
  w.U(c.lit_pos);
  w.Clamped(c.count);
  w.U(c.count_digits);
  w.U(static_cast<uint64_t>(c.array_node + 1));
  w.U(c.item);
  w.Keys(c.item_keys);
  w.U(static_cast<uint64_t>(c.item_node + 1));
  w.U(static_cast<uint8_t>(c.pending));
  w.Clamped(c.pending_count);
  w.U(c.pending_arity);
  w.U(static_cast<uint64_t>(c.pending_node + 1));
  auto ws_cap = static_cast<uint32_t>(std::max(t.limits.max_whitespace_run, 0));
  w.Clamped(ws_cap >= c.ws_run ? ws_cap - c.ws_run : 0);
  w.U(c.uni_digits);
  w.U(c.uni_value);
  w.U(c.surrogate);
}

}  // namespace grammar_internal

using grammar_internal::Cursor;
using grammar_internal::Follow;
using grammar_internal::LiteralRule;
using grammar_internal::NodeRule;
using grammar_internal::Tables;

std::string_view GrammarModeName(GrammarMode mode) {
  return mode == GrammarMode::kToon ? "toon" : "json";
}

GrammarReject::GrammarReject(size_t offset, const std::string& reason)
    : Error("grammar rejects byte at offset " + std::to_string(offset) + ": " + reason),
      offset_(offset),
      reason_(reason) {}

namespace {

int32_t AddLiteral(Tables& t, std::string bytes, Follow follow, int32_t node) {
  t.literals.push_back(LiteralRule{std::move(bytes), follow, node});
  return static_cast<int32_t>(t.literals.size() - 1);
}

int32_t CompileNode(Tables& t, const Schema& s) {
  auto id = static_cast<int32_t>(t.nodes.size());
  t.nodes.emplace_back(s.kind());
  if (s.kind() == Schema::Kind::kObject) {
    if (s.fields().empty()) throw UnsupportedSchema("objects without fields cannot be generated");
    for (const SchemaField& f : s.fields()) {
      int32_t child = CompileNode(t, f.schema);
      std::string key = ToonKey(f.name);
      int32_t lit;
      if (f.schema.is_scalar()) {
        lit = AddLiteral(t, key + ": ", Follow::kValue, child);
      } else if (f.schema.kind() == Schema::Kind::kObject) {
        lit = AddLiteral(t, key + ":", Follow::kObjectEol, child);
      } else {
        lit = AddLiteral(t, key + "[", Follow::kCount, child);
      }
      t.nodes[id].fields.push_back({child, lit});
    }
  } else if (s.kind() == Schema::Kind::kArray) {
    int32_t elem = CompileNode(t, s.element());
    t.nodes[id].element = elem;
    const Schema& e = s.element();
    bool tabular = e.kind() == Schema::Kind::kObject &&
                   std::all_of(e.fields().begin(), e.fields().end(),
                               [](const SchemaField& f) { return f.schema.is_scalar(); });
    if (tabular) {
      std::string header = "{";
      for (size_t i = 0; i < e.fields().size(); ++i) {
        if (i > 0) header += ",";
        header += ToonKey(e.fields()[i].name);
      }
      header += "}:";
      t.nodes[id].tabular = true;
      t.nodes[id].header_literal = AddLiteral(t, std::move(header), Follow::kEol, id);
    }
  }
  return id;
}

// Frames needed on the stack for `node` and everything below it.
size_t FramesNeeded(const Tables& t, int32_t node) {
  const NodeRule& n = t.nodes[node];
  switch (n.kind) {
    case Schema::Kind::kObject: {
      size_t deepest = 0;
      for (const auto& f : n.fields) deepest = std::max(deepest, FramesNeeded(t, f.child));
      return 1 + deepest;
    }
    case Schema::Kind::kArray:
      return n.tabular ? 1 : 1 + FramesNeeded(t, n.element);
    default:
      return 0;
  }
}

}  // namespace

std::shared_ptr<const Grammar> Grammar::Compile(GrammarMode mode, const Schema* schema,
                                                GrammarLimits limits) {
  if (limits.max_depth < 0 || limits.max_key_bytes < 1 || limits.max_scalar_bytes < 1 ||
      limits.max_count_digits < 1 || limits.max_header_fields < 1 || limits.max_whitespace_run < 0) {
    throw Error("grammar limits out of range");
  }
  auto t = std::make_unique<Tables>();
  t->mode = mode;
  t->limits = limits;
  t->max_frames = static_cast<size_t>(limits.max_depth) + 1;
  if (schema != nullptr) {
    if (mode == GrammarMode::kJson) {
      throw UnsupportedSchema("schema-constrained generation is only available for TOON");
    }
    if (schema->kind() != Schema::Kind::kObject) {
      throw UnsupportedSchema("schema root must be an object");
    }
    t->schema = true;
    t->root = CompileNode(*t, *schema);
    t->colon_literal = AddLiteral(*t, ":", Follow::kEol, -1);
    if (FramesNeeded(*t, t->root) > t->max_frames) {
      throw UnsupportedSchema("schema nests deeper than the depth limit");
    }
  }
  return std::shared_ptr<const Grammar>(new Grammar(std::move(t)));
}

Grammar::Grammar(std::unique_ptr<Tables> tables) : tables_(std::move(tables)) {
  static std::atomic<uint64_t> next_id{1};
  id_ = next_id++;
}
Grammar::~Grammar() = default;
GrammarMode Grammar::mode() const { return tables_->mode; }
const GrammarLimits& Grammar::limits() const { return tables_->limits; }
bool Grammar::has_schema() const { return tables_->schema; }

GrammarState::GrammarState(std::shared_ptr<const Grammar> grammar)
    : grammar_(std::move(grammar)),
      cursor_(std::make_unique<Cursor>(grammar_internal::InitialCursor(grammar_->tables()))) {}

GrammarState::GrammarState(const GrammarState& other)
    : grammar_(other.grammar_),
      cursor_(std::make_unique<Cursor>(*other.cursor_)),
      consumed_(other.consumed_) {}

GrammarState& GrammarState::operator=(const GrammarState& other) {
  if (this != &other) {
    grammar_ = other.grammar_;
    cursor_ = std::make_unique<Cursor>(*other.cursor_);
    consumed_ = other.consumed_;
  }
  return *this;
}

GrammarState::GrammarState(GrammarState&&) noexcept = default;
GrammarState& GrammarState::operator=(GrammarState&&) noexcept = default;
GrammarState::~GrammarState() = default;

const char* GrammarState::TryAdvanceByte(uint8_t b) {
  const Tables& t = grammar_->tables();
  const char* r = t.mode == GrammarMode::kToon ? grammar_internal::ToonStep(t, *cursor_, b)
                                               : grammar_internal::JsonStep(t, *cursor_, b);
  if (r == nullptr) ++consumed_;
  return r;
}

void GrammarState::Advance(std::string_view bytes) {
  GrammarState next(*this);
  for (size_t i = 0; i < bytes.size(); ++i) {
    if (const char* r = next.TryAdvanceByte(static_cast<uint8_t>(bytes[i]))) {
      throw GrammarReject(consumed_ + i, r);
    }
  }
  *this = std::move(next);
}

GrammarState GrammarState::Advanced(std::string_view bytes) const {
  GrammarState next(*this);
  next.Advance(bytes);
  return next;
}

bool GrammarState::CanAdvance(std::string_view bytes) const {
  GrammarState next(*this);
  for (char ch : bytes) {
    if (next.TryAdvanceByte(static_cast<uint8_t>(ch)) != nullptr) return false;
  }
  return true;
}

bool GrammarState::IsAccepting() const {
  const Tables& t = grammar_->tables();
  return t.mode == GrammarMode::kToon ? grammar_internal::ToonAccepting(t, *cursor_)
                                      : grammar_internal::JsonAccepting(*cursor_);
}

std::string GrammarState::Fingerprint() const {
  return MemoKey(std::numeric_limits<uint32_t>::max());
}

std::string GrammarState::MemoKey(uint32_t horizon) const {
  std::string out;
  grammar_internal::Serialize(*cursor_, horizon, grammar_->tables(), &out);
  return out;
}

size_t Mask::count() const {
  size_t n = 0;
  for (uint64_t w : bits_) n += static_cast<size_t>(std::popcount(w));
  return n;
}

namespace {

void WalkTrie(const Vocabulary& vocab, int32_t node, const GrammarState& state, Mask& mask) {
  for (const auto& [byte, child] : vocab.trie()[static_cast<size_t>(node)].children) {
    GrammarState next(state);
    if (next.TryAdvanceByte(byte) != nullptr) continue;
    for (TokenId id : vocab.trie()[static_cast<size_t>(child)].tokens) mask.set(static_cast<size_t>(id));
    WalkTrie(vocab, child, next, mask);
  }
}

}  // namespace

Mask ComputeMask(const GrammarState& state, const Vocabulary& vocab) {
  Mask mask(vocab.size());
  WalkTrie(vocab, 0, state, mask);
  mask.accepting = state.IsAccepting();
  return mask;
}

MaskEngine::MaskEngine(std::shared_ptr<const Vocabulary> vocab, size_t max_entries)
    : vocab_(std::move(vocab)), max_entries_(max_entries) {}

const Mask& MaskEngine::AllowedMask(const GrammarState& state) {
  std::string key = std::to_string(state.grammar().id()) + ':' +
                    state.MemoKey(static_cast<uint32_t>(vocab_->max_token_length() + 1));
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  if (cache_.size() >= max_entries_) cache_.clear();
  return cache_.emplace(std::move(key), ComputeMask(state, *vocab_)).first->second;
}

GenerationResult ConstrainedGenerate(const Policy& policy, MaskEngine& engine, GrammarState state,
                                     size_t max_steps) {
  const Vocabulary& vocab = engine.vocab();
  size_t v = vocab.size();
  GenerationResult result;
  std::vector<float> scores(v + 1);
  while (true) {
    const Mask& mask = engine.AllowedMask(state);
    size_t allowed = mask.count();
    if (allowed == 0 && !mask.accepting) {
      throw DeadEnd("no token is allowed after " + std::to_string(result.text.size()) + " bytes");
    }
    std::fill(scores.begin(), scores.end(), 0.0f);
    policy(result.text, std::span<float>(scores));
    TokenId best = -1;
    float best_score = -std::numeric_limits<float>::infinity();
    for (size_t i = 0; i < v; ++i) {
      if (mask.test(i) && (best < 0 || scores[i] > best_score)) {
        best = static_cast<TokenId>(i);
        best_score = scores[i];
      }
    }
    bool eos = mask.accepting && (best < 0 || scores[v] >= best_score);
    result.steps.push_back(GenerationStep{eos ? -1 : best, allowed, mask.accepting});
    if (eos) return result;
    if (result.tokens.size() >= max_steps) {
      throw StepLimitExceeded("generation did not finish within " + std::to_string(max_steps) +
                              " tokens");
    }
    const std::string& bytes = vocab.token(best);
    state.Advance(bytes);
    result.text += bytes;
    result.tokens.push_back(best);
  }
}

}  // namespace toonbench
