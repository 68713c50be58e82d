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


#include "toonbench/harness.h"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>

#include "harness_fixtures.h"
#include "test_util.h"

namespace toonbench {
namespace {

using testing::GoldOutput;
using testing::OrderToonCountThreeOverTwo;
using testing::ReadFile;
using testing::TempDir;
using testing::WrongValueOutput;

const CaseSpec& Order() { return FindCase("order"); }

// Replies from a fixed list and counts calls; throws TransportError for
// entries equal to kFail.
class ListModel : public ChatModel {
 public:
  static constexpr const char* kFail = "\x01transport";
  explicit ListModel(std::vector<ScriptEntry> script) : script_(std::move(script)) {}
  ChatResponse Complete(const ChatRequest& request) override {
    prompts_.push_back(request.messages.at(0).content);
    const ScriptEntry& e = script_.at(prompts_.size() - 1);
    if (e.content == kFail) throw TransportError("connection reset");
    return {e.content, e.usage, "stop", false, 0, ""};
  }
  std::vector<std::string> prompts_;

 private:
  std::vector<ScriptEntry> script_;
};

TEST(EvaluateOutputTest, AcceptsGoldOnEveryTrack) {
  for (const CaseSpec& c : BuiltinCases()) {
    for (Track t : kAllTracks) {
      Evaluation e = EvaluateOutput(c, t, GoldOutput(c, t));
      EXPECT_EQ(e.outcome, Outcome::kSuccess) << c.name << " " << TrackName(t) << e.error_text;
    }
  }
}

TEST(EvaluateOutputTest, StripsFences) {
  std::string json = EmitCanonicalJson(Order().gold);
  Evaluation fenced = EvaluateOutput(Order(), Track::kJ, "Here:\n```json\n" + json + "\n```\n");
  EXPECT_EQ(fenced.outcome, Outcome::kSuccess);
  EXPECT_TRUE(fenced.had_fence);
  Evaluation bare = EvaluateOutput(Order(), Track::kJso, json);
  EXPECT_EQ(bare.outcome, Outcome::kSuccess);
  EXPECT_FALSE(bare.had_fence);
  Evaluation toon = EvaluateOutput(Order(), Track::kT, EncodeToon(Order().gold));
  EXPECT_EQ(toon.outcome, Outcome::kSuccess);
  EXPECT_FALSE(toon.had_fence);
}

TEST(EvaluateOutputTest, ClassifiesFailures) {
  Evaluation decode = EvaluateOutput(Order(), Track::kJ, "{\"id\": 101,");
  EXPECT_EQ(decode.outcome, Outcome::kDecodeError);
  EXPECT_NE(decode.error_text.find("JSON syntax error"), std::string::npos);

  Evaluation invalid = EvaluateOutput(Order(), Track::kJ, R"({"id":"abc","customer":{"id":9,"name":"Ada"},"items":[]})");
  EXPECT_EQ(invalid.outcome, Outcome::kValidationError);
  EXPECT_NE(invalid.error_text.find("id"), std::string::npos);

  Evaluation mismatch = EvaluateOutput(Order(), Track::kT, WrongValueOutput(Order(), Track::kT));
  EXPECT_EQ(mismatch.outcome, Outcome::kMismatch);
  ASSERT_TRUE(mismatch.diff.has_value());
  EXPECT_EQ(FormatPath(mismatch.diff->segments), "id");
  EXPECT_NE(mismatch.error_text.find("value-mismatch at id"), std::string::npos);

  Evaluation count = EvaluateOutput(Order(), Track::kT, OrderToonCountThreeOverTwo());
  EXPECT_EQ(count.outcome, Outcome::kDecodeError);
  EXPECT_NE(count.error_text.find("count-mismatch"), std::string::npos);
}

TEST(EvaluateOutputTest, LaxCoercionAcceptsQuotedNumbers) {
  std::string text = R"({"id":"101","customer":{"id":9,"name":"Ada"},"items":[{"sku":"A1","qty":2,"price":9.99},{"sku":"B2","qty":1,"price":"14.50"}]})";
  EXPECT_EQ(EvaluateOutput(Order(), Track::kJ, text).outcome, Outcome::kSuccess);
}

TEST(RunCaseTest, FirstTrySuccess) {
  ScriptedModel model({{GoldOutput(Order(), Track::kJ), {100, 40}}});
  CaseResult r = RunCase(model, "m", Order(), Track::kJ, PromptRenderer());
  EXPECT_TRUE(r.one_shot_success);
  EXPECT_TRUE(r.final_success);
  ASSERT_EQ(r.attempts.size(), 1u);
  EXPECT_EQ(r.total_prompt_tokens, 100);
  EXPECT_EQ(r.total_completion_tokens, 40);
  EXPECT_EQ(model.requests()[0].messages[0].content, PromptRenderer().Render(Order(), Track::kJ));
}

TEST(RunCaseTest, CountMismatchIsRepaired) {
  std::string bad = OrderToonCountThreeOverTwo();
  std::string expected_error;
  try {
    ParseToon(ExtractToonBlock(bad));
  } catch (const ToonError& e) {
    expected_error = e.what();
  }
  ASSERT_NE(expected_error.find("count-mismatch"), std::string::npos);

  ScriptedModel model({{bad, {300, 50}}, {GoldOutput(Order(), Track::kT), {420, 45}}});
  PromptRenderer prompts;
  CaseResult r = RunCase(model, "m", Order(), Track::kT, prompts);
  EXPECT_FALSE(r.one_shot_success);
  EXPECT_TRUE(r.final_success);
  ASSERT_EQ(r.attempts.size(), 2u);
  EXPECT_EQ(r.attempts[0].outcome, Outcome::kDecodeError);
  EXPECT_EQ(r.attempts[0].error_text, expected_error);
  EXPECT_EQ(r.total_prompt_tokens, 720);
  EXPECT_EQ(r.total_completion_tokens, 95);
  std::string second = model.requests()[1].messages[0].content;
  EXPECT_EQ(second, prompts.RenderRepair(Order(), Track::kT, bad, expected_error));
}

TEST(RunCaseTest, ExhaustsAfterFourAttempts) {
  std::string wrong = WrongValueOutput(Order(), Track::kJ);
  ScriptedModel model(std::vector<ScriptEntry>(4, {wrong, {10, 5}}));
  CaseResult r = RunCase(model, "m", Order(), Track::kJ, PromptRenderer());
  EXPECT_FALSE(r.one_shot_success);
  EXPECT_FALSE(r.final_success);
  ASSERT_EQ(r.attempts.size(), 4u);
  for (const AttemptRecord& a : r.attempts) EXPECT_EQ(a.outcome, Outcome::kMismatch);
  EXPECT_EQ(r.total_prompt_tokens, 40);
  EXPECT_EQ(model.calls(), 4u);
}

TEST(RunCaseTest, RepairEmbedsOnlyTheLatestOutput) {
  std::string w1 = "{\"first\": 1}";
  std::string w2 = "{\"second\": 2}";
  ScriptedModel model({{w1, {1, 1}}, {w2, {1, 1}}, {w1, {1, 1}}, {w2, {1, 1}}});
  RunCase(model, "m", Order(), Track::kJ, PromptRenderer());
  auto reqs = model.requests();
  ASSERT_EQ(reqs.size(), 4u);
  const std::string& third = reqs[2].messages[0].content;
  EXPECT_NE(third.find(w2), std::string::npos);
  EXPECT_EQ(third.find(w1), std::string::npos);
}

TEST(RunCaseTest, TransportFailuresConsumeAttempts) {
  ListModel model({{ListModel::kFail, {}}, {GoldOutput(Order(), Track::kJso), {50, 20}}});
  CaseResult r = RunCase(model, "m", Order(), Track::kJso, PromptRenderer());
  EXPECT_TRUE(r.final_success);
  EXPECT_FALSE(r.one_shot_success);
  ASSERT_EQ(r.attempts.size(), 2u);
  EXPECT_EQ(r.attempts[0].outcome, Outcome::kTransportError);
  EXPECT_EQ(model.prompts_[0], model.prompts_[1]);
  EXPECT_EQ(r.flags, std::vector<std::string>{"transport_error"});

  ListModel dead(std::vector<ScriptEntry>(4, {ListModel::kFail, {}}));
  CaseResult d = RunCase(dead, "m", Order(), Track::kJ, PromptRenderer());
  EXPECT_FALSE(d.final_success);
  EXPECT_EQ(d.attempts.size(), 4u);
  EXPECT_EQ(d.flags, (std::vector<std::string>{"invalid", "transport_error"}));
}

TEST(RunCaseTest, StructuredOutputTrackSetsResponseFormat) {
  ScriptedModel model({{GoldOutput(Order(), Track::kJso), {1, 1}}});
  RunCase(model, "m", Order(), Track::kJso, PromptRenderer());
  EXPECT_TRUE(model.requests()[0].json_object);
  EXPECT_EQ(model.requests()[0].temperature, 0.0);
}

TEST(RunCaseTest, ZeroRepairsMeansOneAttempt) {
  ScriptedModel model({{"nope", {1, 1}}});
  CaseResult r = RunCase(model, "m", Order(), Track::kJ, PromptRenderer(), 0);
  EXPECT_EQ(r.attempts.size(), 1u);
  EXPECT_THROW(RunCase(model, "m", Order(), Track::kJ, PromptRenderer(), -1), UsageError);
}

CaseRow Row(const std::string& name, Track track, bool one_shot, bool fin, int64_t p, int64_t c,
            int attempts = 1) {
  CaseRow row;
  row.model = "m";
  row.case_name = name;
  row.track = track;
  row.one_shot_success = one_shot;
  row.final_success = fin;
  row.attempts = attempts;
  row.prompt_tokens = p;
  row.completion_tokens = c;
  return row;
}

TEST(RunMetricsTest, ThreeFirstTryAndOneRepaired) {
  std::vector<CaseRow> rows = {Row("users", Track::kJ, true, true, 100, 50),
                               Row("order", Track::kJ, true, true, 90, 40),
                               Row("company", Track::kJ, true, true, 120, 80),
                               Row("invoice", Track::kJ, false, true, 400, 160, 2)};
  auto m = ComputeRunMetrics(rows);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_DOUBLE_EQ(m[Track::kJ].one_shot, 0.75);
  EXPECT_DOUBLE_EQ(m[Track::kJ].final, 1.0);
  EXPECT_EQ(m[Track::kJ].tokens, 100 + 50 + 90 + 40 + 120 + 80 + 400 + 160);
}

TEST(RunMetricsTest, PublishedRowShape) {
  std::vector<CaseRow> rows = {Row("users", Track::kJ, true, true, 500, 193),
                               Row("order", Track::kJ, true, true, 480, 213),
                               Row("company", Track::kJ, true, true, 520, 173),
                               Row("invoice", Track::kJ, true, true, 510, 183)};
  auto m = ComputeRunMetrics(rows);
  EXPECT_DOUBLE_EQ(m[Track::kJ].one_shot, 1.0);
  EXPECT_DOUBLE_EQ(m[Track::kJ].final, 1.0);
  EXPECT_EQ(m[Track::kJ].tokens, 2772);
}

TEST(RunMetricsTest, MissingOrDuplicateCase) {
  std::vector<CaseRow> rows = {Row("users", Track::kT, true, true, 1, 1),
                               Row("order", Track::kT, true, true, 1, 1),
                               Row("company", Track::kT, true, true, 1, 1)};
  EXPECT_THROW(ComputeRunMetrics(rows), MissingCase);
  rows.push_back(Row("company", Track::kT, true, true, 1, 1));
  EXPECT_THROW(ComputeRunMetrics(rows), MissingCase);
  rows.back().case_name = "weather";
  EXPECT_THROW(ComputeRunMetrics(rows), MissingCase);
}

TEST(ResultsCsvTest, RoundTripWithQuoting) {
  CaseRow a = Row("users", Track::kJso, false, true, 12, 34, 3);
  a.model = "org/model, \"quoted\"";
  a.run_index = 7;
  a.flags = "no_fence;usage_estimated";
  CaseRow b = Row("order", Track::kT, true, true, 1, 2);
  std::vector<CaseRow> rows = {a, b};
  std::string text = FormatResultsCsv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), kResultsCsvHeader);
  EXPECT_EQ(ParseResultsCsv(text), rows);
}

TEST(ResultsCsvTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseResultsCsv(""), SchemaError);
  EXPECT_THROW(ParseResultsCsv("model,run\n"), SchemaError);
  std::string header(kResultsCsvHeader);
  EXPECT_THROW(ParseResultsCsv(header + "\nm,1,users,J,true,true,1,1\n"), SchemaError);
  EXPECT_THROW(ParseResultsCsv(header + "\nm,1,users,X,true,true,1,1,1,\n"), SchemaError);
  EXPECT_THROW(ParseResultsCsv(header + "\nm,x,users,J,true,true,1,1,1,\n"), SchemaError);
  EXPECT_THROW(ParseResultsCsv(header + "\nm,1,users,J,true,false,1,1,1,\n"), SchemaError);
  EXPECT_THROW(ParseResultsCsv(header + "\nm,1,users,J,true,true,2,1,1,\n"), SchemaError);
  EXPECT_THROW(ParseResultsCsv(header + "\nm,1,users,J,yes,true,1,1,1,\n"), SchemaError);
  EXPECT_EQ(ParseResultsCsv(header + "\r\nm,1,users,J,true,true,1,1,1,\r\n").size(), 1u);
}

TEST(AttemptLogTest, RebuildsTheCsvRows) {
  ScriptedModel model({{"junk", {10, 3}}, {GoldOutput(Order(), Track::kT), {20, 4}}});
  CaseResult r = RunCase(model, "m", Order(), Track::kT, PromptRenderer(), 3, 2);
  std::vector<CaseRow> rows = RowsFromAttemptLog(FormatAttemptLog(r));
  ASSERT_EQ(rows.size(), 1u);
  CaseRow expected = ToRow(r);
  expected.flags.clear();
  EXPECT_EQ(rows[0], expected);
}

TEST(BenchmarkConfigTest, ParsesDocumentedKeys) {
  BenchmarkConfig c = ParseBenchmarkConfig(
      "# comment\n"
      "provider = mock\n"
      "models = a/b, c\n"
      "runs = 3   # trailing comment\n"
      "tracks = T, jso\n"
      "cases = order\n"
      "max_repairs = 2\n"
      "parallelism = 4\n"
      "output = out.csv\n"
      "mock_seed = 42\n"
      "mock_first_failure = 0.5\n",
      "/base");
  EXPECT_EQ(c.provider, Provider::kMock);
  EXPECT_EQ(c.models, (std::vector<std::string>{"a/b", "c"}));
  EXPECT_EQ(c.runs_per_model, 3);
  EXPECT_EQ(c.tracks, (std::vector<Track>{Track::kT, Track::kJso}));
  EXPECT_EQ(c.cases, std::vector<std::string>{"order"});
  EXPECT_EQ(c.max_repairs, 2);
  EXPECT_EQ(c.parallelism, 4);
  EXPECT_EQ(c.output, std::filesystem::path("/base/out.csv"));
  EXPECT_EQ(c.attempts_log, std::filesystem::path("/base/attempts.jsonl"));
  EXPECT_EQ(c.mock.seed, 42u);
  EXPECT_DOUBLE_EQ(c.mock.first_attempt_failure, 0.5);
}

TEST(BenchmarkConfigTest, RejectsBadConfigs) {
  EXPECT_THROW(ParseBenchmarkConfig("provider = mock\n"), ConfigError);
  EXPECT_THROW(ParseBenchmarkConfig("models = a\n"), ConfigError);  // openai without endpoint
  EXPECT_THROW(ParseBenchmarkConfig("provider = mock\nmodels = a\ncases = weather\n"), ConfigError);
  EXPECT_THROW(ParseBenchmarkConfig("provider = mock\nmodels = a\nruns = 0\n"), ConfigError);
  EXPECT_THROW(ParseBenchmarkConfig("provider = mock\nmodels = a\ncolour = red\n"), ConfigError);
  EXPECT_THROW(ParseBenchmarkConfig("provider = mock\nmodels = a\nmodels = b\n"), ConfigError);
  EXPECT_THROW(ParseBenchmarkConfig("provider = mock\nmodels = a\ntracks = X\n"), ConfigError);
  EXPECT_THROW(ParseBenchmarkConfig("provider = mock\nmodels = a\nruns = many\n"), ConfigError);
  EXPECT_THROW(ParseBenchmarkConfig("provider = mock\nmodels = a\njust text\n"), ConfigError);
  EXPECT_THROW(LoadBenchmarkConfig("/nonexistent/bench.cfg"), ConfigError);
}

TEST(BenchmarkConfigTest, OpenAiProviderNeedsTheKeyVariable) {
  BenchmarkConfig c = ParseBenchmarkConfig(
      "models = a\nendpoint = http://127.0.0.1:1/v1\napi_key_env = TOONBENCH_UNSET_KEY_VAR\n");
  EXPECT_THROW(DefaultModelFactory(c), ConfigError);
}

BenchmarkConfig MockConfig(const std::filesystem::path& dir, int parallelism = 1) {
  BenchmarkConfig c;
  c.provider = Provider::kMock;
  c.models = {"mock/a"};
  c.runs_per_model = 10;
  c.parallelism = parallelism;
  c.output = dir / "results.csv";
  c.attempts_log = dir / "attempts.jsonl";
  return c;
}

TEST(RunBenchmarkTest, MockCardinalityAndInvariants) {
  TempDir dir("bench");
  BenchmarkConfig c = MockConfig(dir.path());
  std::vector<RunResult> runs = RunBenchmark(c, DefaultModelFactory(c));
  std::vector<CaseRow> rows = ReadResultsCsv(c.output);
  ASSERT_EQ(rows.size(), 120u);
  std::set<std::tuple<std::string, int, std::string, Track>> keys;
  for (const CaseRow& r : rows) {
    keys.emplace(r.model, r.run_index, r.case_name, r.track);
    EXPECT_LE(r.attempts, 4);
  }
  EXPECT_EQ(keys.size(), 120u);
  ASSERT_EQ(runs.size(), 10u);
  int64_t csv_tokens = 0;
  for (const CaseRow& r : rows) csv_tokens += r.prompt_tokens + r.completion_tokens;
  int64_t run_tokens = 0;
  for (const RunResult& run : runs) {
    ASSERT_EQ(run.metrics.size(), 3u);
    for (const auto& [track, m] : run.metrics) {
      EXPECT_GE(m.final, m.one_shot);
      run_tokens += m.tokens;
    }
  }
  EXPECT_EQ(run_tokens, csv_tokens);
  std::vector<CaseRow> from_log = RowsFromAttemptLog(ReadFile(c.attempts_log));
  ASSERT_EQ(from_log.size(), rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(from_log[i].prompt_tokens, rows[i].prompt_tokens);
    EXPECT_EQ(from_log[i].completion_tokens, rows[i].completion_tokens);
    EXPECT_EQ(from_log[i].attempts, rows[i].attempts);
    EXPECT_EQ(from_log[i].final_success, rows[i].final_success);
  }
  // The mock's default failure rates make both outcomes occur.
  bool some_repair = false, some_one_shot = false;
  for (const CaseRow& r : rows) {
    some_repair |= r.attempts > 1;
    some_one_shot |= r.one_shot_success;
  }
  EXPECT_TRUE(some_repair);
  EXPECT_TRUE(some_one_shot);
}

TEST(RunBenchmarkTest, OutputDoesNotDependOnParallelism) {
  TempDir a("bench_a"), b("bench_b");
  BenchmarkConfig ca = MockConfig(a.path(), 1);
  BenchmarkConfig cb = MockConfig(b.path(), 4);
  RunBenchmark(ca, DefaultModelFactory(ca));
  RunBenchmark(cb, DefaultModelFactory(cb));
  EXPECT_EQ(ReadFile(ca.output), ReadFile(cb.output));
  EXPECT_EQ(ReadFile(ca.attempts_log), ReadFile(cb.attempts_log));
}

TEST(RunBenchmarkTest, ResumesAfterInterruption) {
  TempDir full("bench_full"), cut("bench_cut");
  BenchmarkConfig cf = MockConfig(full.path());
  RunBenchmark(cf, DefaultModelFactory(cf));

  BenchmarkConfig cc = MockConfig(cut.path(), 1);
  int finished = 0;
  BenchmarkHooks stop_at_50;
  stop_at_50.on_cell_done = [&](const CaseResult&) {
    if (++finished == 50) throw Error("interrupted");
  };
  EXPECT_THROW(RunBenchmark(cc, DefaultModelFactory(cc), stop_at_50), Error);
  EXPECT_EQ(ReadResultsCsv(cc.output).size(), 50u);

  cc.parallelism = 3;
  int resumed = 0;
  BenchmarkHooks count;
  count.on_cell_done = [&](const CaseResult&) { ++resumed; };
  RunBenchmark(cc, DefaultModelFactory(cc), count);
  EXPECT_EQ(resumed, 70);
  EXPECT_EQ(ReadFile(cc.output), ReadFile(cf.output));
  EXPECT_EQ(ReadFile(cc.attempts_log), ReadFile(cf.attempts_log));
}

TEST(RunBenchmarkTest, RefusesAForeignResultsFile) {
  TempDir dir("bench_foreign");
  BenchmarkConfig c = MockConfig(dir.path());
  std::ofstream(c.output) << kResultsCsvHeader << "\nother,1,users,J,true,true,1,1,1,\n";
  int calls = 0;
  ModelFactory counting = [&](const Cell&) -> std::shared_ptr<ChatModel> {
    ++calls;
    return nullptr;
  };
  EXPECT_THROW(RunBenchmark(c, counting), ConfigError);
  EXPECT_EQ(calls, 0);
}

TEST(RunBenchmarkTest, ScriptedCellsFlowIntoRunMetrics) {
  TempDir dir("bench_scripted");
  BenchmarkConfig c = MockConfig(dir.path());
  c.runs_per_model = 1;
  c.tracks = {Track::kT};
  ModelFactory factory = [](const Cell& cell) -> std::shared_ptr<ChatModel> {
    const CaseSpec& spec = FindCase(cell.case_name);
    if (cell.case_name == "invoice") {
      return std::make_shared<ScriptedModel>(std::vector<ScriptEntry>{
          {WrongValueOutput(spec, Track::kT), {700, 90}}, {GoldOutput(spec, Track::kT), {800, 95}}});
    }
    return std::make_shared<ScriptedModel>(
        std::vector<ScriptEntry>{{GoldOutput(spec, Track::kT), {600, 80}}});
  };
  std::vector<RunResult> runs = RunBenchmark(c, factory);
  ASSERT_EQ(runs.size(), 1u);
  const TrackMetrics& m = runs[0].metrics.at(Track::kT);
  EXPECT_DOUBLE_EQ(m.one_shot, 0.75);
  EXPECT_DOUBLE_EQ(m.final, 1.0);
  EXPECT_EQ(m.tokens, 3 * (600 + 80) + 700 + 90 + 800 + 95);
}

TEST(MockChatModelTest, DeterministicPerSeed) {
  MockOptions always{0, 1.0, 1.0};
  for (const CaseSpec& c : BuiltinCases()) {
    for (Track t : kAllTracks) {
      MockChatModel a(c, t, 99, always), b(c, t, 99, always);
      ChatRequest req = BuildChatRequest("m", "prompt", t);
      for (int i = 0; i < 4; ++i) {
        ChatResponse ra = a.Complete(req);
        EXPECT_EQ(ra.content, b.Complete(req).content);
        EXPECT_NE(EvaluateOutput(c, t, ra.content).outcome, Outcome::kSuccess) << ra.content;
      }
    }
  }
  MockOptions never{0, 0.0, 0.0};
  MockChatModel ok(Order(), Track::kT, 1, never);
  ChatResponse r = ok.Complete(BuildChatRequest("m", "12345678", Track::kT));
  EXPECT_EQ(EvaluateOutput(Order(), Track::kT, r.content).outcome, Outcome::kSuccess);
  EXPECT_EQ(r.usage.prompt_tokens, 2);
  EXPECT_EQ(r.usage.completion_tokens, EstimateTokens(r.content));
}

}  // namespace
}  // namespace toonbench
