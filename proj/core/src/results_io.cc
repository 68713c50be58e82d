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

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "toonbench/harness.h"

namespace toonbench {
namespace {

using nlohmann::json;

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

// RFC 4180 records; each record is a list of fields.
std::vector<std::vector<std::string>> SplitCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  auto end_record = [&] {
    if (field_started || !record.empty()) {
      record.push_back(std::move(field));
      records.push_back(std::move(record));
    }
    record.clear();
    field.clear();
    field_started = false;
  };
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (quoted) {
      if (ch != '"') {
        field += ch;
      } else if (i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else {
        quoted = false;
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!field.empty()) throw SchemaError("stray quote inside a CSV field");
        quoted = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        field += ch;
        field_started = true;
    }
  }
  if (quoted) throw SchemaError("unterminated quoted CSV field");
  end_record();
  return records;
}

template <typename T>
T ParseNumber(const std::string& s, const char* column, size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw SchemaError("record " + std::to_string(line) + ": bad " + column + " '" + s + "'");
  }
  return v;
}

bool ParseBool(const std::string& s, const char* column, size_t line) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw SchemaError("record " + std::to_string(line) + ": bad " + column + " '" + s + "'");
}

Track ParseTrackStrict(const std::string& s, size_t line) {
  for (Track t : kAllTracks) {
    if (TrackName(t) == s) return t;
  }
  throw SchemaError("record " + std::to_string(line) + ": unknown track '" + s + "'");
}

void CheckRow(const CaseRow& row, size_t line) {
  auto fail = [line](const std::string& what) {
    throw SchemaError("record " + std::to_string(line) + ": " + what);
  };
  if (row.model.empty()) fail("empty model");
  if (row.case_name.empty()) fail("empty case");
  if (row.run_index < 1) fail("run_index must be at least 1");
  if (row.attempts < 1) fail("attempts must be at least 1");
  if (row.one_shot_success && !row.final_success) fail("one-shot success without final success");
  if (row.one_shot_success && row.attempts != 1) fail("one-shot success with several attempts");
}

}  // namespace

std::string FormatCsvRow(const CaseRow& row) {
  std::string out;
  out += CsvField(row.model) + ',';
  out += std::to_string(row.run_index) + ',';
  out += CsvField(row.case_name) + ',';
  out += std::string(TrackName(row.track)) + ',';
  out += std::string(row.one_shot_success ? "true" : "false") + ',';
  out += std::string(row.final_success ? "true" : "false") + ',';
  out += std::to_string(row.attempts) + ',';
  out += std::to_string(row.prompt_tokens) + ',';
  out += std::to_string(row.completion_tokens) + ',';
  out += CsvField(row.flags);
  return out;
}

std::string FormatResultsCsv(std::span<const CaseRow> rows) {
  std::string out(kResultsCsvHeader);
  out += '\n';
  for (const CaseRow& row : rows) out += FormatCsvRow(row) + '\n';
  return out;
}

std::vector<CaseRow> ParseResultsCsv(std::string_view text) {
  auto records = SplitCsv(text);
  if (records.empty()) throw SchemaError("results CSV is empty");
  std::string header;
  for (size_t i = 0; i < records[0].size(); ++i) header += (i ? "," : "") + records[0][i];
  if (header != kResultsCsvHeader) {
    throw SchemaError("unexpected results CSV header: " + header);
  }
  std::vector<CaseRow> rows;
  for (size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r];
    if (f.size() != 10) {
      throw SchemaError("record " + std::to_string(r) + ": expected 10 fields, found " +
                        std::to_string(f.size()));
    }
    CaseRow row;
    row.model = f[0];
    row.run_index = ParseNumber<int>(f[1], "run_index", r);
    row.case_name = f[2];
    row.track = ParseTrackStrict(f[3], r);
    row.one_shot_success = ParseBool(f[4], "one_shot_success", r);
    row.final_success = ParseBool(f[5], "final_success", r);
    row.attempts = ParseNumber<int>(f[6], "attempts", r);
    row.prompt_tokens = ParseNumber<int64_t>(f[7], "prompt_tokens", r);
    row.completion_tokens = ParseNumber<int64_t>(f[8], "completion_tokens", r);
    row.flags = f[9];
    CheckRow(row, r);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CaseRow> ReadResultsCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return ParseResultsCsv(ss.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::string FormatAttemptLog(const CaseResult& result) {
  std::string out;
  for (const AttemptRecord& a : result.attempts) {
    json j;
    j["model"] = result.model;
    j["run_index"] = result.run_index;
    j["case"] = result.case_name;
    j["track"] = TrackName(result.track);
    j["attempt_index"] = a.attempt_index;
    j["prompt_tokens"] = a.usage.prompt_tokens;
    j["completion_tokens"] = a.usage.completion_tokens;
    j["usage_estimated"] = a.usage_estimated;
    j["outcome"] = OutcomeName(a.outcome);
    j["error"] = a.error_text;
    j["diff"] = a.diff ? json(a.diff->Describe()) : json(nullptr);
    j["raw_output"] = a.raw_output;
    out += j.dump(-1, ' ', false, json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

std::vector<CaseRow> RowsFromAttemptLog(std::string_view text) {
  std::vector<CaseRow> rows;
  std::map<std::tuple<std::string, int, std::string, Track>, size_t> index;
  std::map<size_t, std::set<std::string>> flags;
  std::istringstream lines{std::string(text)};
  std::string line;
  size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      std::string model = j.at("model").get<std::string>();
      int run = j.at("run_index").get<int>();
      std::string name = j.at("case").get<std::string>();
      Track track = ParseTrackStrict(j.at("track").get<std::string>(), n);
      auto outcome = ParseOutcome(j.at("outcome").get<std::string>());
      if (!outcome) throw SchemaError("line " + std::to_string(n) + ": unknown outcome");
      auto [it, inserted] = index.emplace(std::make_tuple(model, run, name, track), rows.size());
      if (inserted) {
        CaseRow row;
        row.model = model;
        row.run_index = run;
        row.case_name = name;
        row.track = track;
        rows.push_back(row);
      }
      CaseRow& row = rows[it->second];
      int attempt = j.at("attempt_index").get<int>();
      if (attempt != row.attempts + 1) {
        throw SchemaError("line " + std::to_string(n) + ": attempts out of order");
      }
      row.attempts = attempt;
      row.prompt_tokens += j.at("prompt_tokens").get<int64_t>();
      row.completion_tokens += j.at("completion_tokens").get<int64_t>();
      if (*outcome == Outcome::kSuccess) {
        row.final_success = true;
        row.one_shot_success = attempt == 1;
      }
      if (j.at("usage_estimated").get<bool>()) flags[it->second].insert("usage_estimated");
      if (*outcome == Outcome::kTransportError) flags[it->second].insert("transport_error");
    } catch (const json::exception& e) {
      throw SchemaError("attempt log line " + std::to_string(n) + ": " + e.what());
    }
  }
  for (auto& [i, set] : flags) {
    for (const std::string& f : set) {
      if (!rows[i].flags.empty()) rows[i].flags += ';';
      rows[i].flags += f;
    }
  }
  return rows;
}

}  // namespace toonbench
