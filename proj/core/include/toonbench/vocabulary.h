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

#ifndef TOONBENCH_VOCABULARY_H_
#define TOONBENCH_VOCABULARY_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace toonbench {

using TokenId = int32_t;

/// Tokenizer vocabulary: dense ids 0..V-1 mapped to non-empty byte strings,
/// indexed by a byte trie for prefix walks.
class Vocabulary {
 public:
  struct TrieNode {
    std::vector<std::pair<uint8_t, int32_t>> children;  // sorted by byte
    std::vector<TokenId> tokens;                         // tokens ending here
  };

  /// Throws Error on an empty token.
  explicit Vocabulary(std::vector<std::string> tokens);

  /// Reads `id<TAB>hex-bytes` lines. Ids must be dense and start at 0.
  static Vocabulary Load(const std::filesystem::path& path);
  static Vocabulary Parse(std::string_view text);

  size_t size() const { return tokens_.size(); }
  const std::string& token(TokenId id) const { return tokens_.at(static_cast<size_t>(id)); }
  size_t max_token_length() const { return max_len_; }

  /// Node 0 is the root.
  const std::vector<TrieNode>& trie() const { return trie_; }

  /// Greedy longest-match tokenization (used to build fixtures and examples).
  std::vector<TokenId> TokenizeGreedy(std::string_view text) const;

  /// Serializes to the fixture format accepted by Parse.
  std::string Serialize() const;

 private:
  std::vector<std::string> tokens_;
  std::vector<TrieNode> trie_;
  size_t max_len_ = 0;
};

}  // namespace toonbench

#endif  // TOONBENCH_VOCABULARY_H_
