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

// Chat-completion clients: an HTTP client for OpenAI-compatible endpoints and
// a scripted model for deterministic tests.

#ifndef TOONBENCH_LLM_CLIENT_H_
#define TOONBENCH_LLM_CLIENT_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toonbench/prompts.h"
#include "toonbench/value.h"

namespace toonbench {

struct ChatMessage {
  std::string role;
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  bool json_object = false;  // response_format {"type": "json_object"}
  std::optional<int> max_tokens;
};

struct Usage {
  int64_t prompt_tokens = 0;
  int64_t completion_tokens = 0;

  int64_t total() const { return prompt_tokens + completion_tokens; }
  friend bool operator==(const Usage&, const Usage&) = default;
};

struct ChatResponse {
  std::string content;
  Usage usage;
  std::string finish_reason;
  bool usage_estimated = false;  // provider sent no usage; see EstimateTokens
  int retries = 0;               // transient failures before this response
  std::string request_body;      // effective JSON body sent, empty for mocks
};

/// The request could not be delivered or the reply could not be read.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// The endpoint answered with a non-success HTTP status.
class ApiError : public Error {
 public:
  ApiError(int status, std::string body);
  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

class ScriptExhausted : public Error {
 public:
  using Error::Error;
};

/// Something that answers chat requests. Implementations are thread-safe.
class ChatModel {
 public:
  virtual ~ChatModel() = default;
  virtual ChatResponse Complete(const ChatRequest& request) = 0;
};

/// Single-user-message request at temperature 0; JSO sets json_object.
ChatRequest BuildChatRequest(const std::string& model, std::string prompt, Track track);

/// ceil(bytes / 4), the fallback token count when usage is missing.
int64_t EstimateTokens(std::string_view text);

/// OpenAI-compatible `/chat/completions` body for `request`.
std::string ChatRequestBody(const ChatRequest& request);

/// Reads a `/chat/completions` reply. Missing usage is estimated from the
/// request messages and the reply content and flagged. Throws
/// TransportError on a malformed body.
ChatResponse ParseChatResponseBody(std::string_view body, const ChatRequest& request);

struct EndpointConfig {
  std::string base_url;  // e.g. https://host/v1; `/chat/completions` is appended
  std::string api_key_env = "TOONBENCH_API_KEY";
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{1000};
  double backoff_multiplier = 2.0;
  std::chrono::seconds timeout{120};
  int max_in_flight = 8;
};

class HttpChatModel : public ChatModel {
 public:
  using Logger = std::function<void(const std::string&)>;

  /// Reads the API key from the configured environment variable; a missing
  /// variable sends no Authorization header. Throws UsageError on a
  /// malformed base URL.
  explicit HttpChatModel(EndpointConfig config, Logger log = nullptr);

  /// Retries transport errors, HTTP 429 and 5xx with exponential backoff,
  /// up to max_retries times; other statuses throw ApiError immediately.
  ChatResponse Complete(const ChatRequest& request) override;

 private:
  ChatResponse Attempt(const std::string& body, const ChatRequest& request);

  EndpointConfig config_;
  Logger log_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  std::string api_key_;
  std::mutex mu_;
  std::condition_variable slot_free_;
  int in_flight_ = 0;
};

struct ScriptEntry {
  std::string content;
  Usage usage;
};

/// Returns the scripted replies in order, whatever the request.
class ScriptedModel : public ChatModel {
 public:
  explicit ScriptedModel(std::vector<ScriptEntry> script);

  /// Throws ScriptExhausted once every entry has been returned.
  ChatResponse Complete(const ChatRequest& request) override;

  size_t calls() const;
  /// Requests received so far, in order.
  std::vector<ChatRequest> requests() const;

 private:
  mutable std::mutex mu_;
  std::vector<ScriptEntry> script_;
  std::vector<ChatRequest> requests_;
};

}  // namespace toonbench

#endif  // TOONBENCH_LLM_CLIENT_H_
