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

#include "toonbench/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "toonbench/value.h"

namespace toonbench {
namespace {

int HexDigit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  trie_.emplace_back();
  for (size_t id = 0; id < tokens_.size(); ++id) {
    const std::string& t = tokens_[id];
    if (t.empty()) throw Error("vocabulary token " + std::to_string(id) + " is empty");
    max_len_ = std::max(max_len_, t.size());
    size_t node = 0;
    for (char ch : t) {
      auto b = static_cast<uint8_t>(ch);
      auto& kids = trie_[node].children;
      auto it = std::lower_bound(kids.begin(), kids.end(), b,
                                 [](const auto& kid, uint8_t v) { return kid.first < v; });
      if (it != kids.end() && it->first == b) {
        node = static_cast<size_t>(it->second);
      } else {
        auto next = static_cast<int32_t>(trie_.size());
        kids.insert(it, {b, next});
        trie_.emplace_back();
        node = static_cast<size_t>(next);
      }
    }
    trie_[node].tokens.push_back(static_cast<TokenId>(id));
  }
}

Vocabulary Vocabulary::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read vocabulary " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Parse(ss.str());
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

Vocabulary Vocabulary::Parse(std::string_view text) {
  std::vector<std::string> tokens;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error("line " + std::to_string(line_no) + ": expected id<TAB>hex");
    }
    std::string id_text(line.substr(0, tab));
    if (id_text != std::to_string(tokens.size())) {
      throw Error("line " + std::to_string(line_no) + ": expected id " +
                  std::to_string(tokens.size()) + ", found '" + id_text + "'");
    }
    std::string_view hex = line.substr(tab + 1);
    if (hex.empty() || hex.size() % 2 != 0) {
      throw Error("line " + std::to_string(line_no) + ": malformed hex bytes");
    }
    std::string bytes;
    for (size_t i = 0; i < hex.size(); i += 2) {
      int hi = HexDigit(hex[i]), lo = HexDigit(hex[i + 1]);
      if (hi < 0 || lo < 0) throw Error("line " + std::to_string(line_no) + ": malformed hex bytes");
      bytes.push_back(static_cast<char>(hi * 16 + lo));
    }
    tokens.push_back(std::move(bytes));
  }
  return Vocabulary(std::move(tokens));
}

std::vector<TokenId> Vocabulary::TokenizeGreedy(std::string_view text) const {
  std::vector<TokenId> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t node = 0, best_len = 0;
    TokenId best = -1;
    for (size_t i = pos; i < text.size(); ++i) {
      const auto& kids = trie_[node].children;
      auto b = static_cast<uint8_t>(text[i]);
      auto it = std::lower_bound(kids.begin(), kids.end(), b,
                                 [](const auto& kid, uint8_t v) { return kid.first < v; });
      if (it == kids.end() || it->first != b) break;
      node = static_cast<size_t>(it->second);
      if (!trie_[node].tokens.empty()) {
        best = trie_[node].tokens.front();
        best_len = i - pos + 1;
      }
    }
    if (best < 0) {
      throw Error("byte value " + std::to_string(static_cast<uint8_t>(text[pos])) + " at offset " +
                  std::to_string(pos) + " is not covered by the vocabulary");
    }
    out.push_back(best);
    pos += best_len;
  }
  return out;
}

std::string Vocabulary::Serialize() const {
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  for (size_t id = 0; id < tokens_.size(); ++id) {
    out += std::to_string(id);
    out.push_back('\t');
    for (char ch : tokens_[id]) {
      auto b = static_cast<uint8_t>(ch);
      out.push_back(kHex[b >> 4]);
      out.push_back(kHex[b & 15]);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace toonbench
