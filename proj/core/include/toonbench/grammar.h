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

// Byte-level automata for grammar-constrained decoding of TOON and JSON
// documents, and a token-mask engine over a Vocabulary.
//
// The TOON automaton accepts a canonical subset of what ParseToon reads:
// two-space indentation, no blank lines, no trailing spaces, `[N]` counts
// without leading zeros, list layout or tabular layout (never inline), and at
// least one field in every object. Array frames carry their remaining item
// count so that `[N]` is enforced exactly. Without a schema, keys are
// identifiers and must be unique per object. With a schema, keys, field order
// (declaration order), array layout and scalar types are fixed: arrays whose
// elements are objects of scalars are tabular, all other arrays are lists.
//
// The JSON automaton accepts any well-formed document whose root is an
// object, with unescaped unique keys of bounded length.

#ifndef TOONBENCH_GRAMMAR_H_
#define TOONBENCH_GRAMMAR_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "toonbench/schema.h"
#include "toonbench/value.h"
#include "toonbench/vocabulary.h"

namespace toonbench {

enum class GrammarMode : uint8_t { kToon, kJson };

std::string_view GrammarModeName(GrammarMode mode);

/// Bounds that keep every mask computation finite.
struct GrammarLimits {
  int max_depth = 16;          // containers below the root
  int max_key_bytes = 64;
  int max_scalar_bytes = 256;  // per scalar lexeme, excluding quotes
  int max_count_digits = 4;    // digits in a TOON `[N]`
  int max_header_fields = 32;  // names in a TOON tabular header
  int max_whitespace_run = 64; // consecutive JSON whitespace bytes
};

class UnsupportedSchema : public Error {
 public:
  using Error::Error;
};

/// A token (or byte string) that the automaton cannot consume.
class GrammarReject : public Error {
 public:
  GrammarReject(size_t offset, const std::string& reason);
  size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  size_t offset_;
  std::string reason_;
};

namespace grammar_internal {
struct Tables;
struct Cursor;
}  // namespace grammar_internal

/// Immutable compiled grammar; share it between states and threads.
class Grammar {
 public:
  /// Throws UnsupportedSchema when `schema` cannot be enforced: schemas in
  /// JSON mode, non-object roots, objects without fields, or nesting deeper
  /// than `limits.max_depth`.
  static std::shared_ptr<const Grammar> Compile(GrammarMode mode, const Schema* schema = nullptr,
                                                GrammarLimits limits = {});
  ~Grammar();

  GrammarMode mode() const;
  const GrammarLimits& limits() const;
  bool has_schema() const;
  const grammar_internal::Tables& tables() const { return *tables_; }

  /// Process-unique id, part of every mask cache key.
  uint64_t id() const { return id_; }

 private:
  explicit Grammar(std::unique_ptr<grammar_internal::Tables> tables);
  std::unique_ptr<grammar_internal::Tables> tables_;
  uint64_t id_;
};

/// Position of the automaton after consuming a byte string. Cheap to copy;
/// the state depends only on the bytes consumed, never on how they were split
/// into tokens.
class GrammarState {
 public:
  /// State at document start.
  explicit GrammarState(std::shared_ptr<const Grammar> grammar);
  GrammarState(const GrammarState& other);
  GrammarState& operator=(const GrammarState& other);
  GrammarState(GrammarState&&) noexcept;
  GrammarState& operator=(GrammarState&&) noexcept;
  ~GrammarState();

  /// Consumes one byte. Returns nullptr on success, else a static reason;
  /// after a failure the state must be discarded.
  const char* TryAdvanceByte(uint8_t b);

  /// Consumes `bytes`, throwing GrammarReject (and leaving *this unchanged)
  /// if any byte is illegal.
  void Advance(std::string_view bytes);

  /// Copy of *this advanced by `bytes`; throws GrammarReject.
  GrammarState Advanced(std::string_view bytes) const;

  /// True when Advance(bytes) would succeed.
  bool CanAdvance(std::string_view bytes) const;

  /// True when the bytes consumed so far form a complete document.
  bool IsAccepting() const;

  /// Bytes consumed since document start.
  size_t consumed() const { return consumed_; }

  const Grammar& grammar() const { return *grammar_; }

  /// Complete serialization of the automaton state. Equal fingerprints mean
  /// equal future behavior.
  std::string Fingerprint() const;

  /// Fingerprint with counters and length budgets clamped to `horizon`; two
  /// states with equal keys accept the same byte strings of length below
  /// `horizon` and agree on IsAccepting.
  std::string MemoKey(uint32_t horizon) const;

  friend bool operator==(const GrammarState& a, const GrammarState& b) {
    return a.Fingerprint() == b.Fingerprint();
  }

 private:
  std::shared_ptr<const Grammar> grammar_;
  std::unique_ptr<grammar_internal::Cursor> cursor_;
  size_t consumed_ = 0;
};

/// Token mask: bit i set iff token i can be consumed; `accepting` says
/// whether end-of-sequence is legal.
class Mask {
 public:
  explicit Mask(size_t vocab_size = 0) : bits_((vocab_size + 63) / 64, 0), size_(vocab_size) {}
  bool test(size_t i) const { return (bits_[i / 64] >> (i % 64)) & 1; }
  void set(size_t i) { bits_[i / 64] |= uint64_t{1} << (i % 64); }
  size_t size() const { return size_; }
  size_t count() const;
  bool any() const { return count() > 0; }
  bool accepting = false;

  friend bool operator==(const Mask& a, const Mask& b) {
    return a.size_ == b.size_ && a.bits_ == b.bits_ && a.accepting == b.accepting;
  }

 private:
  std::vector<uint64_t> bits_;
  size_t size_;
};

/// Exact mask by a trie walk that advances a copy of the state byte by byte
/// and prunes whole subtrees at the first illegal byte.
Mask ComputeMask(const GrammarState& state, const Vocabulary& vocab);

/// Mask computation with a memo cache keyed on the grammar id and
/// GrammarState::MemoKey. Not thread-safe; use one engine per thread. The
/// returned reference stays valid until the next call.
class MaskEngine {
 public:
  explicit MaskEngine(std::shared_ptr<const Vocabulary> vocab, size_t max_entries = 1 << 16);

  const Mask& AllowedMask(const GrammarState& state);
  const Vocabulary& vocab() const { return *vocab_; }
  size_t hits() const { return hits_; }
  size_t misses() const { return misses_; }

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  size_t max_entries_;
  std::unordered_map<std::string, Mask> cache_;
  size_t hits_ = 0;
  size_t misses_ = 0;
};

class DeadEnd : public Error {
 public:
  using Error::Error;
};

class StepLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Fills `scores` (size V + 1; index V is end-of-sequence) for the next step
/// given the bytes generated so far.
using Policy = std::function<void(std::string_view generated, std::span<float> scores)>;

struct GenerationStep {
  TokenId token;         // -1 for end-of-sequence
  size_t allowed;        // tokens allowed by the mask at this step
  bool eos_allowed;
};

struct GenerationResult {
  std::string text;
  std::vector<TokenId> tokens;
  std::vector<GenerationStep> steps;
};

/// Greedy constrained decoding: at every step the highest-scoring allowed
/// token wins (ties go to the lower id; end-of-sequence wins ties); stops when
/// end-of-sequence is chosen. Throws DeadEnd if the mask is empty in a
/// non-accepting state, StepLimitExceeded after `max_steps` tokens.
GenerationResult ConstrainedGenerate(const Policy& policy, MaskEngine& engine, GrammarState state,
                                     size_t max_steps = 100000);

}  // namespace toonbench

#endif  // TOONBENCH_GRAMMAR_H_
