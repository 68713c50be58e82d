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

#include "toonbench/llm_client.h"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace toonbench {
namespace {

using nlohmann::json;

bool Transient(int status) { return status == 429 || status >= 500; }

class Slot {
 public:
  Slot(std::mutex& mu, std::condition_variable& cv, int& in_flight, int limit)
      : mu_(mu), cv_(cv), in_flight_(in_flight) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < limit; });
    ++in_flight_;
  }
  ~Slot() {
    {
      std::lock_guard lock(mu_);
      --in_flight_;
    }
    cv_.notify_one();
  }
  Slot(const Slot&) = delete;
  Slot& operator=(const Slot&) = delete;

 private:
  std::mutex& mu_;
  std::condition_variable& cv_;
  int& in_flight_;
};

}  // namespace

ApiError::ApiError(int status, std::string body)
    : Error("HTTP " + std::to_string(status) + ": " + body.substr(0, 500)),
      status_(status),
      body_(std::move(body)) {}

ChatRequest BuildChatRequest(const std::string& model, std::string prompt, Track track) {
  ChatRequest req;
  req.model = model;
  req.messages.push_back({"user", std::move(prompt)});
  req.temperature = 0.0;
  req.json_object = track == Track::kJso;
  return req;
}

int64_t EstimateTokens(std::string_view text) {
  return static_cast<int64_t>((text.size() + 3) / 4);
}

std::string ChatRequestBody(const ChatRequest& request) {
  json body;
  body["model"] = request.model;
  json messages = json::array();
  for (const ChatMessage& m : request.messages) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  body["messages"] = std::move(messages);
  body["temperature"] = request.temperature;
  if (request.json_object) body["response_format"] = {{"type", "json_object"}};
  if (request.max_tokens) body["max_tokens"] = *request.max_tokens;
  return body.dump();
}

ChatResponse ParseChatResponseBody(std::string_view body, const ChatRequest& request) {
  ChatResponse resp;
  try {
    json j = json::parse(body);
    const json& choice = j.at("choices").at(0);
    const json& content = choice.at("message").at("content");
    resp.content = content.is_null() ? "" : content.get<std::string>();
    if (choice.contains("finish_reason") && choice["finish_reason"].is_string()) {
      resp.finish_reason = choice["finish_reason"].get<std::string>();
    }
    const json* usage = j.contains("usage") && j["usage"].is_object() ? &j["usage"] : nullptr;
    if (usage && usage->contains("prompt_tokens") && usage->contains("completion_tokens")) {
      resp.usage.prompt_tokens = usage->at("prompt_tokens").get<int64_t>();
      resp.usage.completion_tokens = usage->at("completion_tokens").get<int64_t>();
      if (resp.usage.prompt_tokens < 0 || resp.usage.completion_tokens < 0) {
        throw TransportError("negative token usage in response");
      }
    } else {
      int64_t prompt = 0;
      for (const ChatMessage& m : request.messages) prompt += EstimateTokens(m.content);
      resp.usage = {prompt, EstimateTokens(resp.content)};
      resp.usage_estimated = true;
    }
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed chat completion response: ") + e.what());
  }
  return resp;
}

HttpChatModel::HttpChatModel(EndpointConfig config, Logger log)
    : config_(std::move(config)), log_(std::move(log)) {
  const std::string& url = config_.base_url;
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw UsageError("endpoint URL needs a scheme: " + url);
  std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw UsageError("unsupported URL scheme: " + url);
  size_t path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/chat/completions";
  if (config_.max_in_flight < 1) throw UsageError("max_in_flight must be at least 1");
  if (config_.max_retries < 0) throw UsageError("max_retries must not be negative");
  if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
}

ChatResponse HttpChatModel::Attempt(const std::string& body, const ChatRequest& request) {
  httplib::Client client(origin_);
  auto secs = static_cast<time_t>(config_.timeout.count());
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  client.set_write_timeout(secs, 0);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(path_, headers, body, "application/json");
  if (!res) throw TransportError("request to " + origin_ + path_ + " failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300) throw ApiError(res->status, res->body);
  return ParseChatResponseBody(res->body, request);
}

ChatResponse HttpChatModel::Complete(const ChatRequest& request) {
  Slot slot(mu_, slot_free_, in_flight_, config_.max_in_flight);
  std::string body = ChatRequestBody(request);
  auto backoff = std::chrono::duration<double, std::milli>(config_.initial_backoff);
  for (int attempt = 0;; ++attempt) {
    std::string failure;
    try {
      ChatResponse resp = Attempt(body, request);
      resp.retries = attempt;
      resp.request_body = body;
      return resp;
    } catch (const ApiError& e) {
      if (!Transient(e.status()) || attempt >= config_.max_retries) throw;
      failure = e.what();
    } catch (const TransportError& e) {
      if (attempt >= config_.max_retries) throw;
      failure = e.what();
    }
    if (log_) {
      log_("retry " + std::to_string(attempt + 1) + "/" + std::to_string(config_.max_retries) +
           " for model " + request.model + " after: " + failure);
    }
    std::this_thread::sleep_for(backoff);
    backoff *= config_.backoff_multiplier;
  }
}

ScriptedModel::ScriptedModel(std::vector<ScriptEntry> script) : script_(std::move(script)) {}

ChatResponse ScriptedModel::Complete(const ChatRequest& request) {
  std::lock_guard lock(mu_);
  if (requests_.size() >= script_.size()) {
    throw ScriptExhausted("scripted model has no reply left (" + std::to_string(script_.size()) +
                          " scripted)");
  }
  const ScriptEntry& entry = script_[requests_.size()];
  requests_.push_back(request);
  ChatResponse resp;
  resp.content = entry.content;
  resp.usage = entry.usage;
  resp.finish_reason = "stop";
  return resp;
}

size_t ScriptedModel::calls() const {
  std::lock_guard lock(mu_);
  return requests_.size();
}

std::vector<ChatRequest> ScriptedModel::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

}  // namespace toonbench
