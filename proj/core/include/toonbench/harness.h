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

// The evaluation loop: prompt, decode, validate, compare with gold, repair.
//
// A cell is one (model, run, case, track) combination. Each cell produces a
// CaseResult with its attempts, and one CaseRow in the results CSV. Run-level
// metrics are computed from CaseRows so that they can be recomputed from a
// CSV alone.

#ifndef TOONBENCH_HARNESS_H_
#define TOONBENCH_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "toonbench/llm_client.h"
#include "toonbench/prompts.h"
#include "toonbench/schema.h"
#include "toonbench/value.h"

namespace toonbench {

inline constexpr int kDefaultMaxRepairs = 3;

enum class Outcome : uint8_t {
  kSuccess,
  kDecodeError,
  kValidationError,
  kMismatch,
  kTransportError,
};

/// "success", "decode_error", "validation_error", "mismatch",
/// "transport_error".
std::string_view OutcomeName(Outcome outcome);
std::optional<Outcome> ParseOutcome(std::string_view name);

/// Result of checking one model output against a case.
struct Evaluation {
  Outcome outcome = Outcome::kSuccess;
  std::string error_text;         // empty on success
  std::optional<DiffPath> diff;   // set for kMismatch
  bool had_fence = true;          // false when the output had no code fence
};

/// T: extract the ```toon block and decode it to JSON. J and JSO: take the
/// contents of a ```json (or bare ```) fence if present, else the whole
/// output. Then parse JSON, validate against the case schema with lax
/// coercion, canonicalize and compare with the gold value.
Evaluation EvaluateOutput(const CaseSpec& spec, Track track, std::string_view output);

struct AttemptRecord {
  int attempt_index = 1;  // 1-based
  Usage usage;
  bool usage_estimated = false;
  Outcome outcome = Outcome::kSuccess;
  std::string error_text;
  std::optional<DiffPath> diff;
  std::string raw_output;
};

struct CaseResult {
  std::string model;
  int run_index = 1;
  std::string case_name;
  Track track = Track::kJ;
  std::vector<AttemptRecord> attempts;
  bool one_shot_success = false;
  bool final_success = false;
  int64_t total_prompt_tokens = 0;
  int64_t total_completion_tokens = 0;
  /// Sorted: "invalid" (every attempt was a transport failure), "no_fence"
  /// (a T output without a code fence), "transport_error",
  /// "usage_estimated".
  std::vector<std::string> flags;
};

/// Runs one cell: the first attempt uses the track prompt, each later one the
/// repair prompt built from the latest rejected output and its error text.
/// Stops at the first success or after 1 + max_repairs attempts. Transport
/// and API errors are recorded as failed attempts; a later attempt after a
/// transport failure resends the previous prompt.
CaseResult RunCase(ChatModel& model, const std::string& model_name, const CaseSpec& spec,
                   Track track, const PromptRenderer& prompts,
                   int max_repairs = kDefaultMaxRepairs, int run_index = 1);

/// One results-CSV row.
struct CaseRow {
  std::string model;
  int run_index = 1;
  std::string case_name;
  Track track = Track::kJ;
  bool one_shot_success = false;
  bool final_success = false;
  int attempts = 0;
  int64_t prompt_tokens = 0;
  int64_t completion_tokens = 0;
  std::string flags;  // ';'-separated

  friend bool operator==(const CaseRow&, const CaseRow&) = default;
};

CaseRow ToRow(const CaseResult& result);

class MissingCase : public Error {
 public:
  using Error::Error;
};

struct TrackMetrics {
  double one_shot = 0;  // fraction of cases
  double final = 0;     // fraction of cases
  int64_t tokens = 0;   // prompt + completion summed over the cases
};

/// Metrics per track present in `rows`, which must all belong to one run.
/// Every track needs exactly one row per name in `case_names`, else
/// MissingCase.
std::map<Track, TrackMetrics> ComputeRunMetrics(std::span<const CaseRow> rows,
                                                std::span<const std::string> case_names);

/// Same, over the four built-in cases.
std::map<Track, TrackMetrics> ComputeRunMetrics(std::span<const CaseRow> rows);

struct RunResult {
  std::string model;
  int run_index = 1;
  std::vector<CaseRow> cases;
  std::map<Track, TrackMetrics> metrics;
};

/// Groups rows by (model, run) in first-appearance order and computes each
/// run's metrics.
std::vector<RunResult> GroupRuns(std::span<const CaseRow> rows,
                                 std::span<const std::string> case_names);

// Results CSV.

/// Header of the results CSV.
inline constexpr std::string_view kResultsCsvHeader =
    "model,run_index,case,track,one_shot_success,final_success,attempts,prompt_tokens,"
    "completion_tokens,flags";

/// A results CSV (or attempt log) that does not follow the documented layout.
class SchemaError : public Error {
 public:
  using Error::Error;
};

std::string FormatCsvRow(const CaseRow& row);
std::string FormatResultsCsv(std::span<const CaseRow> rows);
std::vector<CaseRow> ParseResultsCsv(std::string_view text);
std::vector<CaseRow> ReadResultsCsv(const std::filesystem::path& path);

/// One JSON object per line: model, run_index, case, track, attempt_index,
/// prompt_tokens, completion_tokens, usage_estimated, outcome, error, diff,
/// raw_output.
std::string FormatAttemptLog(const CaseResult& result);

/// CaseRows rebuilt from an attempt log, in first-appearance order. Only
/// the usage_estimated and transport_error flags can be recovered.
std::vector<CaseRow> RowsFromAttemptLog(std::string_view text);

// Benchmark configuration and execution.

class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Deterministic stand-in for a model. It answers every request with the
/// case's gold value in the track's format; with the configured
/// probabilities an answer is corrupted instead (wrong `[N]` count, a
/// missing field or a changed value). Decisions come from a seeded generator,
/// so replies depend only on (seed, number of calls so far).
struct MockOptions {
  uint64_t seed = 0;
  double first_attempt_failure = 0.25;
  double repair_failure = 0.25;
};

class MockChatModel : public ChatModel {
 public:
  MockChatModel(const CaseSpec& spec, Track track, uint64_t seed, MockOptions options);
  ChatResponse Complete(const ChatRequest& request) override;

 private:
  const CaseSpec& spec_;
  Track track_;
  MockOptions options_;
  uint64_t state_;
  int calls_ = 0;
  std::mutex mu_;
};

/// Stable 64-bit FNV-1a hash, used to derive per-cell seeds.
uint64_t StableHash(std::string_view text, uint64_t seed = 0);

enum class Provider : uint8_t { kOpenAi, kMock };

/// Config file format: one `key = value` per line, `#` starts a comment,
/// lists are comma-separated. Keys:
///   provider        openai | mock                       (default openai)
///   endpoint        base URL, e.g. https://host/v1      (openai only)
///   api_key_env     env var holding the API key         (TOONBENCH_API_KEY)
///   models          model identifiers                   (required)
///   runs            runs per model                      (10)
///   tracks          J, JSO, T                           (all)
///   cases           users, order, company, invoice      (all)
///   max_repairs     repair attempts after the first     (3)
///   parallelism     concurrent cells                    (1)
///   max_retries     transport retries per request       (3)
///   timeout_seconds per-request timeout                 (120)
///   output          results CSV path                    (results.csv)
///   attempts_log    attempt log path                    (attempts.jsonl)
///   prompts_dir     template override directory         (none)
///   mock_seed, mock_first_failure, mock_repair_failure  (0, 0.25, 0.25)
/// Relative paths are resolved against the config file's directory.
struct BenchmarkConfig {
  Provider provider = Provider::kOpenAi;
  EndpointConfig endpoint;
  std::vector<std::string> models;
  int runs_per_model = 10;
  std::vector<Track> tracks = {Track::kJ, Track::kJso, Track::kT};
  std::vector<std::string> cases = {"users", "order", "company", "invoice"};
  int max_repairs = kDefaultMaxRepairs;
  int parallelism = 1;
  std::filesystem::path output = "results.csv";
  std::filesystem::path attempts_log = "attempts.jsonl";
  std::optional<std::filesystem::path> prompts_dir;
  MockOptions mock;
};

/// Parses the config format above. Throws ConfigError.
BenchmarkConfig ParseBenchmarkConfig(std::string_view text,
                                     const std::filesystem::path& base_dir = {});
BenchmarkConfig LoadBenchmarkConfig(const std::filesystem::path& path);

/// Throws ConfigError on an unusable config.
void ValidateBenchmarkConfig(const BenchmarkConfig& config);

struct Cell {
  std::string model;
  int run_index;
  std::string case_name;
  Track track;
};

/// Returns the model answering one cell.
using ModelFactory = std::function<std::shared_ptr<ChatModel>(const Cell& cell)>;

/// The factory for `config.provider`: one shared HTTP client for openai, one
/// MockChatModel per cell (seeded from mock_seed and the cell) for mock.
/// Throws ConfigError when the openai API key variable is unset.
ModelFactory DefaultModelFactory(const BenchmarkConfig& config);

struct BenchmarkHooks {
  std::function<void(const CaseResult&)> on_cell_done;  // called serialized
  std::function<void(const std::string&)> log;
};

/// Executes every cell of the config not already present in the results CSV.
/// Each finished cell is appended to the CSV and the attempt log at once;
/// at the end both files are rewritten in (model, run, case, track) config
/// order, so their contents do not depend on execution order. Returns the
/// runs of every row in the final CSV, in the same order.
std::vector<RunResult> RunBenchmark(const BenchmarkConfig& config, const ModelFactory& factory,
                                    const BenchmarkHooks& hooks = {});

}  // namespace toonbench

#endif  // TOONBENCH_HARNESS_H_
