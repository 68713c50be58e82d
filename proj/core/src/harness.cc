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

#include <algorithm>
#include <set>

#include "toonbench/json.h"
#include "toonbench/toon.h"

namespace toonbench {
namespace {

constexpr Outcome kAllOutcomes[] = {Outcome::kSuccess, Outcome::kDecodeError,
                                    Outcome::kValidationError, Outcome::kMismatch,
                                    Outcome::kTransportError};

// Body of the first ```json fence, else of the first bare fence, else the
// whole output.
std::string StripJsonFence(std::string_view output, bool* had_fence) {
  for (std::string_view open : {"```json", "```"}) {
    size_t start = output.find(open);
    while (start != std::string_view::npos) {
      size_t eol = output.find('\n', start);
      if (eol == std::string_view::npos) break;
      std::string_view info = output.substr(start + 3, eol - start - 3);
      while (!info.empty() && (info.back() == ' ' || info.back() == '\r')) info.remove_suffix(1);
      if (open == "```" ? info.empty() : info == "json") {
        size_t body = eol + 1;
        size_t close = output.find("```", body);
        *had_fence = true;
        return std::string(output.substr(body, close == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : close - body));
      }
      start = output.find(open, start + 3);
    }
  }
  *had_fence = false;
  return std::string(output);
}

std::string JoinValidationErrors(const std::vector<ValidationError>& errors) {
  std::string out;
  for (const ValidationError& e : errors) {
    if (!out.empty()) out += '\n';
    out += e.Describe();
  }
  return out;
}

// xorshift64*; the mock must behave identically on every platform, which
// the standard distributions do not guarantee.
uint64_t NextRandom(uint64_t& state) {
  state ^= state >> 12;
  state ^= state << 25;
  state ^= state >> 27;
  return state * 0x2545F4914F6CDD1DULL;
}

double NextUnit(uint64_t& state) {
  return static_cast<double>(NextRandom(state) >> 11) * 0x1.0p-53;
}

// `v` with its first scalar leaf (depth-first) changed; nullopt if none.
std::optional<Value> ChangeFirstScalar(const Value& v) {
  switch (v.kind()) {
    case ValueKind::kNull:
      return Value(0);
    case ValueKind::kBool:
      return Value(!v.as_bool());
    case ValueKind::kInt:
      return Value(*Integer::FromString(v.as_int().ToString() + "1"));
    case ValueKind::kFloat:
      return Value(v.as_float() + 1.0);
    case ValueKind::kString:
      return Value(v.as_string() + "x");
    case ValueKind::kArray: {
      Array items = v.as_array();
      for (Value& item : items) {
        if (auto changed = ChangeFirstScalar(item)) {
          item = std::move(*changed);
          return Value(std::move(items));
        }
      }
      return std::nullopt;
    }
    case ValueKind::kObject: {
      Object members = v.as_object();
      for (Member& m : members) {
        if (auto changed = ChangeFirstScalar(m.value)) {
          m.value = std::move(*changed);
          return Value(std::move(members));
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// TOON text with the first `[N]` replaced by `[N+1]`.
std::optional<std::string> BumpFirstCount(std::string toon) {
  size_t open = toon.find('[');
  if (open == std::string::npos) return std::nullopt;
  size_t close = toon.find(']', open);
  if (close == std::string::npos) return std::nullopt;
  auto n = Integer::FromString(toon.substr(open + 1, close - open - 1));
  if (!n || !n->ToInt64()) return std::nullopt;
  toon.replace(open + 1, close - open - 1, std::to_string(*n->ToInt64() + 1));
  return toon;
}

std::string Fence(std::string toon) {
  if (!toon.empty() && toon.back() != '\n') toon += '\n';
  return "```toon\n" + toon + "```\n";
}

std::string Render(const Value& v, Track track) {
  if (track == Track::kT) return Fence(EncodeToon(v));
  return EmitCanonicalJson(v);
}

}  // namespace

std::string_view OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kSuccess:
      return "success";
    case Outcome::kDecodeError:
      return "decode_error";
    case Outcome::kValidationError:
      return "validation_error";
    case Outcome::kMismatch:
      return "mismatch";
    case Outcome::kTransportError:
      return "transport_error";
  }
  return "?";
}

std::optional<Outcome> ParseOutcome(std::string_view name) {
  for (Outcome o : kAllOutcomes) {
    if (OutcomeName(o) == name) return o;
  }
  return std::nullopt;
}

Evaluation EvaluateOutput(const CaseSpec& spec, Track track, std::string_view output) {
  Evaluation eval;
  Value parsed;
  try {
    std::string json_text;
    if (track == Track::kT) {
      json_text = ToonToJson(ExtractToonBlock(output, &eval.had_fence));
    } else {
      json_text = StripJsonFence(output, &eval.had_fence);
    }
    parsed = ParseJson(json_text);
  } catch (const Error& e) {
    eval.outcome = Outcome::kDecodeError;
    eval.error_text = e.what();
    return eval;
  }
  ValidationResult validation = ValidateAndCoerce(parsed, spec.schema);
  if (!validation.errors.empty()) {
    eval.outcome = Outcome::kValidationError;
    eval.error_text = JoinValidationErrors(validation.errors);
    return eval;
  }
  Comparison cmp = DeepEqual(Canonicalize(validation.coerced), spec.gold);
  if (!cmp.equal) {
    eval.outcome = Outcome::kMismatch;
    eval.diff = cmp.diff;
    eval.error_text = "content differs from the expected data: " + cmp.diff->Describe();
  }
  return eval;
}

CaseResult RunCase(ChatModel& model, const std::string& model_name, const CaseSpec& spec,
                   Track track, const PromptRenderer& prompts, int max_repairs, int run_index) {
  if (max_repairs < 0) throw UsageError("max_repairs must not be negative");
  CaseResult result;
  result.model = model_name;
  result.run_index = run_index;
  result.case_name = spec.name;
  result.track = track;
  std::set<std::string> flags;
  std::string prompt = prompts.Render(spec, track);
  for (int attempt = 1; attempt <= 1 + max_repairs; ++attempt) {
    AttemptRecord rec;
    rec.attempt_index = attempt;
    try {
      ChatResponse resp = model.Complete(BuildChatRequest(model_name, prompt, track));
      rec.usage = resp.usage;
      rec.usage_estimated = resp.usage_estimated;
      rec.raw_output = std::move(resp.content);
      Evaluation eval = EvaluateOutput(spec, track, rec.raw_output);
      rec.outcome = eval.outcome;
      rec.error_text = std::move(eval.error_text);
      rec.diff = std::move(eval.diff);
      if (track == Track::kT && !eval.had_fence) flags.insert("no_fence");
    } catch (const TransportError& e) {
      rec.outcome = Outcome::kTransportError;
      rec.error_text = e.what();
    } catch (const ApiError& e) {
      rec.outcome = Outcome::kTransportError;
      rec.error_text = e.what();
    }
    if (rec.usage_estimated) flags.insert("usage_estimated");
    if (rec.outcome == Outcome::kTransportError) flags.insert("transport_error");
    result.total_prompt_tokens += rec.usage.prompt_tokens;
    result.total_completion_tokens += rec.usage.completion_tokens;
    bool success = rec.outcome == Outcome::kSuccess;
    if (!success && rec.outcome != Outcome::kTransportError) {
      prompt = prompts.RenderRepair(spec, track, rec.raw_output, rec.error_text);
    }
    result.attempts.push_back(std::move(rec));
    if (success) {
      result.final_success = true;
      result.one_shot_success = attempt == 1;
      break;
    }
  }
  if (std::all_of(result.attempts.begin(), result.attempts.end(), [](const AttemptRecord& a) {
        return a.outcome == Outcome::kTransportError;
      })) {
    flags.insert("invalid");
  }
  result.flags.assign(flags.begin(), flags.end());
  return result;
}

CaseRow ToRow(const CaseResult& result) {
  CaseRow row;
  row.model = result.model;
  row.run_index = result.run_index;
  row.case_name = result.case_name;
  row.track = result.track;
  row.one_shot_success = result.one_shot_success;
  row.final_success = result.final_success;
  row.attempts = static_cast<int>(result.attempts.size());
  row.prompt_tokens = result.total_prompt_tokens;
  row.completion_tokens = result.total_completion_tokens;
  for (const std::string& f : result.flags) {
    if (!row.flags.empty()) row.flags += ';';
    row.flags += f;
  }
  return row;
}

std::map<Track, TrackMetrics> ComputeRunMetrics(std::span<const CaseRow> rows,
                                                std::span<const std::string> case_names) {
  if (case_names.empty()) throw UsageError("no case names given");
  std::map<Track, std::map<std::string, const CaseRow*>> by_track;
  for (const CaseRow& row : rows) {
    if (row.model != rows.front().model || row.run_index != rows.front().run_index) {
      throw UsageError("rows of different runs passed to ComputeRunMetrics");
    }
    if (std::find(case_names.begin(), case_names.end(), row.case_name) == case_names.end()) {
      throw MissingCase("unexpected case " + row.case_name);
    }
    if (!by_track[row.track].emplace(row.case_name, &row).second) {
      throw MissingCase("case " + row.case_name + " appears twice for track " +
                        std::string(TrackName(row.track)));
    }
  }
  std::map<Track, TrackMetrics> out;
  for (const auto& [track, cases] : by_track) {
    TrackMetrics m;
    for (const std::string& name : case_names) {
      auto it = cases.find(name);
      if (it == cases.end()) {
        throw MissingCase("run " + rows.front().model + "#" +
                          std::to_string(rows.front().run_index) + " track " +
                          std::string(TrackName(track)) + " lacks case " + name);
      }
      m.one_shot += it->second->one_shot_success ? 1 : 0;
      m.final += it->second->final_success ? 1 : 0;
      m.tokens += it->second->prompt_tokens + it->second->completion_tokens;
    }
    m.one_shot /= static_cast<double>(case_names.size());
    m.final /= static_cast<double>(case_names.size());
    out[track] = m;
  }
  return out;
}

std::map<Track, TrackMetrics> ComputeRunMetrics(std::span<const CaseRow> rows) {
  std::vector<std::string> names;
  for (const CaseSpec& c : BuiltinCases()) names.push_back(c.name);
  return ComputeRunMetrics(rows, names);
}

std::vector<RunResult> GroupRuns(std::span<const CaseRow> rows,
                                 std::span<const std::string> case_names) {
  std::vector<RunResult> runs;
  std::map<std::pair<std::string, int>, size_t> index;
  for (const CaseRow& row : rows) {
    auto [it, inserted] = index.emplace(std::make_pair(row.model, row.run_index), runs.size());
    if (inserted) {
      runs.emplace_back();
      runs.back().model = row.model;
      runs.back().run_index = row.run_index;
    }
    runs[it->second].cases.push_back(row);
  }
  for (RunResult& run : runs) run.metrics = ComputeRunMetrics(run.cases, case_names);
  return runs;
}

uint64_t StableHash(std::string_view text, uint64_t seed) {
  uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (char ch : text) {
    h ^= static_cast<uint8_t>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

MockChatModel::MockChatModel(const CaseSpec& spec, Track track, uint64_t seed,
                             MockOptions options)
    : spec_(spec), track_(track), options_(options), state_(seed | 1) {}

ChatResponse MockChatModel::Complete(const ChatRequest& request) {
  std::lock_guard lock(mu_);
  double p = calls_++ == 0 ? options_.first_attempt_failure : options_.repair_failure;
  std::string content;
  if (NextUnit(state_) < p) {
    switch (NextRandom(state_) % 3) {
      case 0:
        if (track_ == Track::kT) {
          if (auto bumped = BumpFirstCount(EncodeToon(spec_.gold))) {
            content = Fence(*bumped);
            break;
          }
        }
        [[fallthrough]];
      case 1: {
        Object members = spec_.gold.as_object();
        members.erase(members.begin());
        content = Render(Value(std::move(members)), track_);
        break;
      }
      default:
        content = Render(*ChangeFirstScalar(spec_.gold), track_);
        break;
    }
  } else {
    content = Render(spec_.gold, track_);
  }
  ChatResponse resp;
  int64_t prompt_tokens = 0;
  for (const ChatMessage& m : request.messages) prompt_tokens += EstimateTokens(m.content);
  resp.usage = {prompt_tokens, EstimateTokens(content)};
  resp.content = std::move(content);
  resp.finish_reason = "stop";
  return resp;
}

}  // namespace toonbench
