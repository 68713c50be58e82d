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

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "toonbench/schema.h"

namespace toonbench {
namespace {

using nlohmann::json;

// Chat-completions server on an ephemeral local port.
class FakeServer {
 public:
  explicit FakeServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
    server_.Post("/v1/chat/completions", [this, handler](const httplib::Request& req,
                                                        httplib::Response& res) {
      ++hits_;
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      handler(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
  int hits() const { return hits_; }
  const std::string& last_body() const { return last_body_; }
  const std::string& last_auth() const { return last_auth_; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> hits_{0};
  std::string last_body_;
  std::string last_auth_;
};

std::string Reply(const std::string& content, bool with_usage = true) {
  json j = {{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}},
                          {"finish_reason", "stop"}}}}};
  if (with_usage) j["usage"] = {{"prompt_tokens", 11}, {"completion_tokens", 7}};
  return j.dump();
}

EndpointConfig Config(const std::string& url) {
  EndpointConfig c;
  c.base_url = url;
  c.api_key_env = "TOONBENCH_TEST_KEY";
  c.initial_backoff = std::chrono::milliseconds(1);
  c.timeout = std::chrono::seconds(5);
  return c;
}

TEST(ChatRequestTest, StructuredOutputDiffersOnlyInResponseFormat) {
  ChatRequest j = BuildChatRequest("m", "prompt", Track::kJ);
  ChatRequest jso = BuildChatRequest("m", "prompt", Track::kJso);
  json a = json::parse(ChatRequestBody(j));
  json b = json::parse(ChatRequestBody(jso));
  EXPECT_FALSE(a.contains("response_format"));
  EXPECT_EQ(b["response_format"], json({{"type", "json_object"}}));
  b.erase("response_format");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a["temperature"], 0.0);
  EXPECT_EQ(a["messages"], json::parse(R"([{"role":"user","content":"prompt"}])"));
}

TEST(ChatRequestTest, EstimateIsCeilingOfQuarterBytes) {
  EXPECT_EQ(EstimateTokens(""), 0);
  EXPECT_EQ(EstimateTokens("a"), 1);
  EXPECT_EQ(EstimateTokens("abcd"), 1);
  EXPECT_EQ(EstimateTokens("abcde"), 2);
  EXPECT_EQ(EstimateTokens(std::string(4000, 'x')), 1000);
}

TEST(ChatResponseTest, MissingUsageIsEstimatedAndFlagged) {
  ChatRequest req = BuildChatRequest("m", std::string(10, 'p'), Track::kJ);
  ChatResponse r = ParseChatResponseBody(Reply("hello", false), req);
  EXPECT_TRUE(r.usage_estimated);
  EXPECT_EQ(r.usage, (Usage{3, 2}));
  EXPECT_EQ(r.content, "hello");
  EXPECT_THROW(ParseChatResponseBody("{\"choices\":[]}", req), TransportError);
  EXPECT_THROW(ParseChatResponseBody("not json", req), TransportError);
}

TEST(HttpChatModelTest, ConformantServer) {
  ::setenv("TOONBENCH_TEST_KEY", "sekret", 1);
  FakeServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content(Reply("{\"a\":1}"), "application/json");
  });
  HttpChatModel model(Config(server.url()));
  ChatRequest req = BuildChatRequest("qwen", "hi", Track::kJso);
  ChatResponse r = model.Complete(req);
  EXPECT_EQ(r.content, "{\"a\":1}");
  EXPECT_EQ(r.usage, (Usage{11, 7}));
  EXPECT_FALSE(r.usage_estimated);
  EXPECT_EQ(r.finish_reason, "stop");
  EXPECT_EQ(r.retries, 0);
  EXPECT_EQ(server.last_auth(), "Bearer sekret");
  EXPECT_EQ(json::parse(server.last_body()), json::parse(ChatRequestBody(req)));
  EXPECT_EQ(r.request_body, server.last_body());
  ::unsetenv("TOONBENCH_TEST_KEY");
}

TEST(HttpChatModelTest, RetriesRateLimitThenSucceeds) {
  std::atomic<int> calls{0};
  FakeServer server([&](const httplib::Request&, httplib::Response& res) {
    if (calls++ == 0) {
      res.status = 429;
      res.set_content("slow down", "text/plain");
      return;
    }
    res.set_content(Reply("ok"), "application/json");
  });
  std::vector<std::string> log;
  HttpChatModel model(Config(server.url()), [&](const std::string& m) { log.push_back(m); });
  ChatResponse r = model.Complete(BuildChatRequest("m", "hi", Track::kJ));
  EXPECT_EQ(r.content, "ok");
  EXPECT_EQ(r.retries, 1);
  EXPECT_EQ(r.usage, (Usage{11, 7}));
  EXPECT_EQ(server.hits(), 2);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_NE(log[0].find("429"), std::string::npos);
}

TEST(HttpChatModelTest, ClientErrorIsNotRetried) {
  FakeServer server([](const httplib::Request&, httplib::Response& res) {
    res.status = 400;
    res.set_content("bad model", "text/plain");
  });
  HttpChatModel model(Config(server.url()));
  try {
    model.Complete(BuildChatRequest("m", "hi", Track::kJ));
    FAIL();
  } catch (const ApiError& e) {
    EXPECT_EQ(e.status(), 400);
    EXPECT_EQ(e.body(), "bad model");
  }
  EXPECT_EQ(server.hits(), 1);
}

TEST(HttpChatModelTest, ServerErrorsExhaustRetries) {
  FakeServer server([](const httplib::Request&, httplib::Response& res) { res.status = 503; });
  EndpointConfig config = Config(server.url());
  config.max_retries = 2;
  HttpChatModel model(config);
  EXPECT_THROW(model.Complete(BuildChatRequest("m", "hi", Track::kJ)), ApiError);
  EXPECT_EQ(server.hits(), 3);
}

TEST(HttpChatModelTest, UnreachableEndpointIsTransportError) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  EndpointConfig config = Config("http://127.0.0.1:" + std::to_string(port));
  config.max_retries = 1;
  config.timeout = std::chrono::seconds(1);
  HttpChatModel model(config);
  EXPECT_THROW(model.Complete(BuildChatRequest("m", "hi", Track::kJ)), TransportError);
}

TEST(HttpChatModelTest, RejectsMalformedUrl) {
  EXPECT_THROW(HttpChatModel(Config("localhost:80")), UsageError);
  EXPECT_THROW(HttpChatModel(Config("ftp://x")), UsageError);
}

TEST(ScriptedModelTest, RepliesInOrderThenExhausts) {
  ScriptedModel model({{"bad", {10, 3}}, {"good", {12, 4}}});
  ChatRequest req = BuildChatRequest("m", "p", Track::kT);
  ChatResponse a = model.Complete(req);
  ChatResponse b = model.Complete(req);
  EXPECT_EQ(a.content, "bad");
  EXPECT_EQ(a.usage, (Usage{10, 3}));
  EXPECT_EQ(b.content, "good");
  EXPECT_EQ(b.usage, (Usage{12, 4}));
  EXPECT_EQ(model.calls(), 2u);
  EXPECT_THROW(model.Complete(req), ScriptExhausted);
}

TEST(ScriptedModelTest, EmptyScriptExhaustsImmediately) {
  ScriptedModel model({});
  EXPECT_THROW(model.Complete(BuildChatRequest("m", "p", Track::kJ)), ScriptExhausted);
}

}  // namespace
}  // namespace toonbench
