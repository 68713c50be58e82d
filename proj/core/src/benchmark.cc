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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "toonbench/harness.h"

namespace toonbench {
namespace {

using CellKey = std::tuple<std::string, int, std::string, Track>;

CellKey KeyOf(const CaseRow& row) { return {row.model, row.run_index, row.case_name, row.track}; }
CellKey KeyOf(const Cell& cell) { return {cell.model, cell.run_index, cell.case_name, cell.track}; }

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T ParseNumberValue(const std::string& key, const std::string& value) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config key " + key + ": not a number: '" + value + "'");
  }
  return v;
}

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteAtomically(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<CellKey> AttemptLineKey(const std::string& line) {
  auto j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    auto track = ParseTrack(j.at("track").get<std::string>());
    if (!track) return std::nullopt;
    return CellKey{j.at("model").get<std::string>(), j.at("run_index").get<int>(),
                   j.at("case").get<std::string>(), *track};
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

}  // namespace

BenchmarkConfig ParseBenchmarkConfig(std::string_view text, const std::filesystem::path& base_dir) {
  BenchmarkConfig config;
  std::set<std::string> seen;
  std::istringstream lines{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    ++n;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(n) + ": expected key = value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("config key " + key + " given twice");
    if (key == "provider") {
      if (value == "openai") {
        config.provider = Provider::kOpenAi;
      } else if (value == "mock") {
        config.provider = Provider::kMock;
      } else {
        throw ConfigError("config key provider: expected openai or mock, got '" + value + "'");
      }
    } else if (key == "endpoint") {
      config.endpoint.base_url = value;
    } else if (key == "api_key_env") {
      config.endpoint.api_key_env = value;
    } else if (key == "models") {
      config.models = SplitList(value);
    } else if (key == "runs") {
      config.runs_per_model = ParseNumberValue<int>(key, value);
    } else if (key == "tracks") {
      config.tracks.clear();
      for (const std::string& name : SplitList(value)) {
        auto track = ParseTrack(name);
        if (!track) throw ConfigError("config key tracks: unknown track '" + name + "'");
        config.tracks.push_back(*track);
      }
    } else if (key == "cases") {
      config.cases = SplitList(value);
    } else if (key == "max_repairs") {
      config.max_repairs = ParseNumberValue<int>(key, value);
    } else if (key == "parallelism") {
      config.parallelism = ParseNumberValue<int>(key, value);
    } else if (key == "max_retries") {
      config.endpoint.max_retries = ParseNumberValue<int>(key, value);
    } else if (key == "timeout_seconds") {
      config.endpoint.timeout = std::chrono::seconds(ParseNumberValue<int>(key, value));
    } else if (key == "output") {
      config.output = Resolve(base_dir, value);
    } else if (key == "attempts_log") {
      config.attempts_log = Resolve(base_dir, value);
    } else if (key == "prompts_dir") {
      config.prompts_dir = Resolve(base_dir, value);
    } else if (key == "mock_seed") {
      config.mock.seed = ParseNumberValue<uint64_t>(key, value);
    } else if (key == "mock_first_failure") {
      config.mock.first_attempt_failure = ParseNumberValue<double>(key, value);
    } else if (key == "mock_repair_failure") {
      config.mock.repair_failure = ParseNumberValue<double>(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(n) + ": unknown key '" + key + "'");
    }
  }
  if (!seen.count("output")) config.output = Resolve(base_dir, config.output.string());
  if (!seen.count("attempts_log")) {
    config.attempts_log = Resolve(base_dir, config.attempts_log.string());
  }
  ValidateBenchmarkConfig(config);
  return config;
}

BenchmarkConfig LoadBenchmarkConfig(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadText(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return ParseBenchmarkConfig(text, path.parent_path());
}

void ValidateBenchmarkConfig(const BenchmarkConfig& config) {
  if (config.models.empty()) throw ConfigError("config: no models");
  std::set<std::string> models(config.models.begin(), config.models.end());
  if (models.size() != config.models.size()) throw ConfigError("config: duplicate model");
  if (config.runs_per_model < 1) throw ConfigError("config: runs must be at least 1");
  if (config.tracks.empty()) throw ConfigError("config: no tracks");
  if (std::set<Track>(config.tracks.begin(), config.tracks.end()).size() != config.tracks.size()) {
    throw ConfigError("config: duplicate track");
  }
  if (config.cases.empty()) throw ConfigError("config: no cases");
  std::set<std::string> cases;
  for (const std::string& name : config.cases) {
    try {
      FindCase(name);
    } catch (const Error&) {
      throw ConfigError("config: unknown case '" + name + "'");
    }
    if (!cases.insert(name).second) throw ConfigError("config: duplicate case '" + name + "'");
  }
  if (config.max_repairs < 0) throw ConfigError("config: max_repairs must not be negative");
  if (config.parallelism < 1) throw ConfigError("config: parallelism must be at least 1");
  if (config.endpoint.max_retries < 0) throw ConfigError("config: max_retries must not be negative");
  if (config.endpoint.timeout.count() < 1) throw ConfigError("config: timeout_seconds must be positive");
  if (config.provider == Provider::kOpenAi && config.endpoint.base_url.empty()) {
    throw ConfigError("config: provider openai needs an endpoint");
  }
  for (double p : {config.mock.first_attempt_failure, config.mock.repair_failure}) {
    if (!(p >= 0 && p <= 1)) throw ConfigError("config: mock failure rates must be in [0, 1]");
  }
  if (config.output == config.attempts_log) {
    throw ConfigError("config: output and attempts_log must differ");
  }
}

ModelFactory DefaultModelFactory(const BenchmarkConfig& config) {
  if (config.provider == Provider::kMock) {
    MockOptions options = config.mock;
    return [options](const Cell& cell) -> std::shared_ptr<ChatModel> {
      std::string key = cell.model + '\n' + std::to_string(cell.run_index) + '\n' +
                        cell.case_name + '\n' + std::string(TrackName(cell.track));
      return std::make_shared<MockChatModel>(FindCase(cell.case_name), cell.track,
                                             StableHash(key, options.seed), options);
    };
  }
  const std::string& env = config.endpoint.api_key_env;
  if (!env.empty() && std::getenv(env.c_str()) == nullptr) {
    throw ConfigError("environment variable " + env + " with the API key is not set");
  }
  std::shared_ptr<ChatModel> client;
  try {
    client = std::make_shared<HttpChatModel>(config.endpoint);
  } catch (const UsageError& e) {
    throw ConfigError(e.what());
  }
  return [client](const Cell&) { return client; };
}

std::vector<RunResult> RunBenchmark(const BenchmarkConfig& config, const ModelFactory& factory,
                                    const BenchmarkHooks& hooks) {
  ValidateBenchmarkConfig(config);
  PromptRenderer prompts =
      config.prompts_dir ? PromptRenderer::FromDirectory(*config.prompts_dir) : PromptRenderer();

  std::vector<Cell> cells;
  for (const std::string& model : config.models) {
    for (int run = 1; run <= config.runs_per_model; ++run) {
      for (const std::string& name : config.cases) {
        for (Track track : config.tracks) cells.push_back({model, run, name, track});
      }
    }
  }
  std::map<CellKey, size_t> position;
  for (size_t i = 0; i < cells.size(); ++i) position[KeyOf(cells[i])] = i;

  std::map<CellKey, CaseRow> done;
  bool have_csv = std::filesystem::exists(config.output);
  if (have_csv) {
    for (CaseRow& row : ReadResultsCsv(config.output)) {
      if (!position.count(KeyOf(row))) {
        throw ConfigError(config.output.string() + " holds results outside this configuration (" +
                          row.model + ", run " + std::to_string(row.run_index) + ", " +
                          row.case_name + ")");
      }
      done.emplace(KeyOf(row), std::move(row));
    }
  }
  std::map<CellKey, std::string> logged;
  if (std::filesystem::exists(config.attempts_log)) {
    std::istringstream lines(ReadText(config.attempts_log));
    std::string line;
    while (std::getline(lines, line)) {
      auto key = AttemptLineKey(line);
      if (key && done.count(*key)) logged[*key] += line + '\n';
    }
  }

  std::vector<Cell> todo;
  for (const Cell& cell : cells) {
    if (!done.count(KeyOf(cell))) todo.push_back(cell);
  }
  if (hooks.log) {
    hooks.log(std::to_string(done.size()) + " of " + std::to_string(cells.size()) +
              " cells already present; running " + std::to_string(todo.size()));
  }

  {
    std::ofstream csv(config.output, std::ios::binary | std::ios::app);
    std::ofstream log(config.attempts_log, std::ios::binary | std::ios::app);
    if (!csv) throw Error("cannot write " + config.output.string());
    if (!log) throw Error("cannot write " + config.attempts_log.string());
    if (!have_csv) csv << kResultsCsvHeader << '\n' << std::flush;

    std::mutex mu;
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    auto worker = [&] {
      while (!failed) {
        size_t i = next++;
        if (i >= todo.size()) return;
        const Cell& cell = todo[i];
        try {
          std::shared_ptr<ChatModel> model = factory(cell);
          CaseResult result = RunCase(*model, cell.model, FindCase(cell.case_name), cell.track,
                                      prompts, config.max_repairs, cell.run_index);
          CaseRow row = ToRow(result);
          std::string attempts = FormatAttemptLog(result);
          std::lock_guard lock(mu);
          csv << FormatCsvRow(row) << '\n' << std::flush;
          log << attempts << std::flush;
          if (!csv || !log) throw Error("cannot append results");
          done.emplace(KeyOf(cell), std::move(row));
          logged[KeyOf(cell)] = std::move(attempts);
          if (hooks.on_cell_done) hooks.on_cell_done(result);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    };
    int threads = std::min<int>(config.parallelism, static_cast<int>(std::max<size_t>(todo.size(), 1)));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  std::vector<CaseRow> rows;
  std::string log_text;
  for (const Cell& cell : cells) {
    rows.push_back(done.at(KeyOf(cell)));
    auto it = logged.find(KeyOf(cell));
    if (it != logged.end()) log_text += it->second;
  }
  WriteAtomically(config.output, FormatResultsCsv(rows));
  WriteAtomically(config.attempts_log, log_text);
  return GroupRuns(rows, config.cases);
}

}  // namespace toonbench
