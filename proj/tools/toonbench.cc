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

// toonbench: command-line entry point.
//
// Exit status: 0 on success, 1 when the input is rejected (parse, validation,
// mismatch or generation failure), 2 on usage or configuration errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "toonbench/grammar.h"
#include "toonbench/harness.h"
#include "toonbench/json.h"
#include "toonbench/report.h"
#include "toonbench/schema.h"
#include "toonbench/toon.h"

namespace toonbench {
namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kUsage = 2;


std::string ReadInput(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  ss << in.rdbuf();
  return ss.str();
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw Error("cannot write " + path);
}

bool LooksLikeToon(const std::string& path, std::string_view text) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".toon") == 0) return true;
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return false;
  size_t i = text.find_first_not_of(" \t\r\n");
  return i == std::string_view::npos || text[i] != '{';
}

struct EncodeArgs {
  std::string input = "-";
  std::string output;
};

int RunEncode(const EncodeArgs& a) {
  Value v = ParseJson(ReadInput(a.input));
  WriteOutput(a.output, EncodeToon(v) + "\n");
  return kOk;
}

struct DecodeArgs {
  std::string input = "-";
  std::string output;
  bool extract = false;
};

int RunDecode(const DecodeArgs& a) {
  std::string text = ReadInput(a.input);
  if (a.extract) text = ExtractToonBlock(text);
  WriteOutput(a.output, ToonToJson(text) + "\n");
  return kOk;
}

struct ValidateArgs {
  std::string input;
  std::string case_name;
  std::string format = "auto";
  bool against_gold = false;
};

int RunValidate(const ValidateArgs& a) {
  const CaseSpec& spec = FindCase(a.case_name);
  std::string text = ReadInput(a.input);
  bool toon = a.format == "toon" || (a.format == "auto" && LooksLikeToon(a.input, text));
  Value v = toon ? ParseToon(ExtractToonBlock(text)).root : ParseJson(text);
  ValidationResult result = ValidateAndCoerce(v, spec.schema);
  std::cout << "case: " << spec.name << "\nformat: " << (toon ? "toon" : "json") << "\n";
  if (!result.errors.empty()) {
    std::cout << "schema: " << result.errors.size() << " error(s)\n";
    for (const ValidationError& e : result.errors) std::cout << "  " << e.Describe() << "\n";
    return kRejected;
  }
  std::cout << "schema: ok\n";
  if (a.against_gold) {
    Comparison cmp = DeepEqual(Canonicalize(result.coerced), Canonicalize(spec.gold));
    if (!cmp.equal) {
      std::cout << "gold: " << (cmp.diff ? cmp.diff->Describe() : std::string("differs")) << "\n";
      return kRejected;
    }
    std::cout << "gold: equal\n";
  }
  return kOk;
}

struct GoldArgs {
  std::string out = ".";
  std::vector<std::string> cases;
};

int RunGold(const GoldArgs& a) {
  std::error_code ec;
  std::filesystem::create_directories(a.out, ec);
  if (ec) throw Error("cannot create " + a.out + ": " + ec.message());
  std::vector<const CaseSpec*> specs;
  if (a.cases.empty()) {
    for (const CaseSpec& c : BuiltinCases()) specs.push_back(&c);
  } else {
    for (const std::string& name : a.cases) specs.push_back(&FindCase(name));
  }
  for (const CaseSpec* spec : specs) {
    GoldFiles files = WriteGold(*spec, a.out);
    std::cout << files.json.string() << "\n" << files.toon.string() << "\n";
  }
  return kOk;
}

struct BenchArgs {
  std::string config;
  std::string output;
  std::string attempts_log;
  int parallelism = 0;
  std::string report_dir;
  std::string grouping;
  bool quiet = false;
};

int RunBench(const BenchArgs& a) {
  BenchmarkConfig config = LoadBenchmarkConfig(a.config);
  if (!a.output.empty()) config.output = a.output;
  if (!a.attempts_log.empty()) config.attempts_log = a.attempts_log;
  if (a.parallelism > 0) config.parallelism = a.parallelism;
  Grouping grouping = a.grouping.empty() ? DefaultGrouping() : ParseGrouping(a.grouping);
  ValidateBenchmarkConfig(config);

  size_t total = config.models.size() * static_cast<size_t>(config.runs_per_model) *
                 config.cases.size() * config.tracks.size();
  size_t done = 0;
  BenchmarkHooks hooks;
  if (!a.quiet) {
    hooks.on_cell_done = [&](const CaseResult& r) {
      ++done;
      std::cerr << "[" << done << "] " << r.model << " run " << r.run_index << " " << r.case_name
                << " " << TrackName(r.track) << ": "
                << (r.final_success ? (r.one_shot_success ? "ok" : "repaired") : "failed")
                << " after " << r.attempts.size() << " attempt(s)\n";
    };
    hooks.log = [](const std::string& line) { std::cerr << line << "\n"; };
  }
  std::vector<RunResult> runs = RunBenchmark(config, DefaultModelFactory(config), hooks);
  std::cerr << "results: " << config.output.string() << " (" << total << " cells, " << runs.size()
            << " runs)\nattempt log: " << config.attempts_log.string() << "\n";
  if (!a.report_dir.empty()) {
    std::vector<CaseRow> rows = ReadResultsCsv(config.output);
    for (const auto& path : EmitReport(BuildReport(rows, grouping), a.report_dir)) {
      std::cerr << "wrote " << path.string() << "\n";
    }
  }
  return kOk;
}

struct ReportArgs {
  std::vector<std::string> inputs;
  bool from_attempt_log = false;
  std::string out_dir;
  std::string grouping;
};

int RunReport(const ReportArgs& a) {
  Grouping grouping = a.grouping.empty() ? DefaultGrouping() : ParseGrouping(a.grouping);
  std::vector<CaseRow> rows;
  for (const std::string& path : a.inputs) {
    std::vector<CaseRow> more =
        a.from_attempt_log ? RowsFromAttemptLog(ReadInput(path)) : ReadResultsCsv(path);
    rows.insert(rows.end(), more.begin(), more.end());
  }
  Report report = BuildReport(rows, grouping);
  if (a.out_dir.empty()) {
    std::cout << FormatReportText(report);
    return kOk;
  }
  for (const auto& path : EmitReport(report, a.out_dir)) std::cerr << "wrote " << path.string() << "\n";
  return kOk;
}

// Short scalars and small counts so that random walks finish quickly.
GrammarLimits SimulationLimits() {
  GrammarLimits limits;
  limits.max_scalar_bytes = 12;
  limits.max_count_digits = 1;
  limits.max_key_bytes = 6;
  limits.max_depth = 4;
  return limits;
}

struct MaskSimArgs {
  std::string mode = "toon";
  std::string case_name;
  std::string vocab;
  uint64_t seed = 0;
  float eos_bias = 1.0f;
  size_t max_steps = 4096;
  GrammarLimits limits = SimulationLimits();
  std::string output;
  std::string steps_log;
};

std::string Printable(std::string_view bytes) {
  std::string out;
  for (unsigned char ch : bytes) {
    if (ch == '\n') {
      out += "\\n";
    } else if (ch == '\t') {
      out += "\\t";
    } else if (ch == '\\') {
      out += "\\\\";
    } else if (ch < 0x20 || ch >= 0x7f) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\x%02x", ch);
      out += buf;
    } else {
      out += static_cast<char>(ch);
    }
  }
  return out;
}

int RunMaskSim(const MaskSimArgs& a) {
  GrammarMode mode = a.mode == "json" ? GrammarMode::kJson : GrammarMode::kToon;
  const Schema* schema = a.case_name.empty() ? nullptr : &FindCase(a.case_name).schema;
  auto grammar = Grammar::Compile(mode, schema, a.limits);
  auto vocab = std::make_shared<const Vocabulary>(Vocabulary::Load(a.vocab));
  MaskEngine engine(vocab);
  std::mt19937_64 rng(a.seed);
  Policy policy = [&rng, bias = a.eos_bias](std::string_view, std::span<float> scores) {
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    for (float& s : scores) s = u(rng);
    scores.back() += bias;
  };
  GenerationResult result = ConstrainedGenerate(policy, engine, GrammarState(grammar), a.max_steps);

  std::string log = "step\ttoken\tbytes\tallowed\teos_allowed\n";
  for (size_t i = 0; i < result.steps.size(); ++i) {
    const GenerationStep& s = result.steps[i];
    log += std::to_string(i) + '\t' + std::to_string(s.token) + '\t' +
           (s.token < 0 ? std::string("<eos>") : Printable(vocab->token(s.token))) + '\t' +
           std::to_string(s.allowed) + '\t' + (s.eos_allowed ? "true" : "false") + '\n';
  }
  if (!a.steps_log.empty()) WriteOutput(a.steps_log, log);

  Value v = mode == GrammarMode::kToon ? ParseToon(result.text).root : ParseJson(result.text);
  if (schema != nullptr) {
    auto errors = Validate(v, *schema);
    if (!errors.empty()) {
      std::cerr << "generated document fails validation: " << errors[0].Describe() << "\n";
      WriteOutput(a.output, result.text);
      return kRejected;
    }
  }
  std::cerr << result.tokens.size() << " tokens, " << result.text.size() << " bytes\n";
  std::string text = result.text;
  if (!text.empty() && text.back() != '\n') text += '\n';
  WriteOutput(a.output, text);
  return kOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"toonbench: TOON and JSON structured-output benchmark tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "toonbench 0.1.0");
  std::vector<std::string> case_names;
  for (const CaseSpec& c : BuiltinCases()) case_names.push_back(c.name);

  EncodeArgs encode;
  auto* enc = app.add_subcommand("encode", "Convert a JSON document to TOON");
  enc->add_option("input", encode.input, "JSON file, or - for standard input");
  enc->add_option("-o,--output", encode.output, "Output file (default: standard output)");

  DecodeArgs decode;
  auto* dec = app.add_subcommand("decode", "Convert a TOON document to canonical JSON");
  dec->add_option("input", decode.input, "TOON file, or - for standard input");
  dec->add_option("-o,--output", decode.output, "Output file (default: standard output)");
  dec->add_flag("--extract", decode.extract, "Decode the ```toon block of a model reply");

  ValidateArgs validate;
  auto* val = app.add_subcommand("validate", "Check a document against a case schema");
  val->add_option("input", validate.input, "JSON or TOON file, or - for standard input")
      ->required();
  val->add_option("-c,--case", validate.case_name, "Case name")
      ->required()
      ->check(CLI::IsMember(case_names));
  val->add_option("-f,--format", validate.format, "Input format")
      ->check(CLI::IsMember({"auto", "json", "toon"}));
  val->add_flag("--against-gold", validate.against_gold, "Also compare with the gold value");

  GoldArgs gold;
  auto* gld = app.add_subcommand("gold", "Write <case>.gold.json and <case>.gold.toon files");
  gld->add_option("--out", gold.out, "Output directory");
  gld->add_option("-c,--case", gold.cases, "Cases to write (default: all)")
      ->check(CLI::IsMember(case_names));

  BenchArgs bench;
  auto* bch = app.add_subcommand("bench", "Run the benchmark described by a config file");
  bch->add_option("--config", bench.config, "Benchmark config file")->required();
  bch->add_option("--output", bench.output, "Results CSV (overrides the config)");
  bch->add_option("--attempts-log", bench.attempts_log, "Attempt log (overrides the config)");
  bch->add_option("--parallelism", bench.parallelism, "Concurrent cells (overrides the config)")
      ->check(CLI::PositiveNumber);
  bch->add_option("--report", bench.report_dir, "Also write report artifacts to this directory");
  bch->add_option("--grouping", bench.grouping, "Efficiency groups, e.g. a=users+order;b=company");
  bch->add_flag("-q,--quiet", bench.quiet, "No per-cell progress");

  ReportArgs report;
  auto* rpt = app.add_subcommand("report", "Aggregate results into report tables and figures");
  rpt->add_option("inputs", report.inputs, "Results CSV files")
      ->required()
      ->check(CLI::ExistingFile);
  rpt->add_flag("--from-attempt-log", report.from_attempt_log,
                "Inputs are attempt logs instead of results CSVs");
  rpt->add_option("--out", report.out_dir,
                  "Directory for report.txt and efficiency files (default: text to standard output)");
  rpt->add_option("--grouping", report.grouping, "Efficiency groups, e.g. a=users+order;b=company");

  MaskSimArgs sim;
  auto* msk = app.add_subcommand("mask-sim", "Generate a document by random constrained decoding");
  msk->add_option("--mode", sim.mode, "Grammar mode")->check(CLI::IsMember({"toon", "json"}));
  msk->add_option("-c,--case", sim.case_name, "Case whose schema constrains the output")
      ->check(CLI::IsMember(case_names));
  msk->add_option("--vocab", sim.vocab, "Vocabulary file (id TAB hex bytes per line)")
      ->required()
      ->check(CLI::ExistingFile);
  msk->add_option("--seed", sim.seed, "Random seed");
  msk->add_option("--eos-bias", sim.eos_bias, "Score added to end-of-sequence");
  msk->add_option("--max-steps", sim.max_steps, "Token limit");
  msk->add_option("--max-scalar-bytes", sim.limits.max_scalar_bytes, "Longest scalar lexeme")
      ->check(CLI::PositiveNumber);
  msk->add_option("--max-count-digits", sim.limits.max_count_digits, "Digits in a TOON [N]")
      ->check(CLI::PositiveNumber);
  msk->add_option("--max-key-bytes", sim.limits.max_key_bytes, "Longest free-form key")
      ->check(CLI::PositiveNumber);
  msk->add_option("--max-depth", sim.limits.max_depth, "Deepest container nesting")
      ->check(CLI::PositiveNumber);
  msk->add_option("-o,--output", sim.output, "Output file (default: standard output)");
  msk->add_option("--steps", sim.steps_log, "Write the per-step log (TSV) to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*enc) return RunEncode(encode);
    if (*dec) return RunDecode(decode);
    if (*val) return RunValidate(validate);
    if (*gld) return RunGold(gold);
    if (*bch) return RunBench(bench);
    if (*rpt) return RunReport(report);
    if (*msk) return RunMaskSim(sim);
  } catch (const UsageError& e) {
    std::cerr << "toonbench: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedSchema& e) {
    std::cerr << "toonbench: " << e.what() << "\n";
    return kUsage;
  } catch (const ToonError& e) {
    std::cerr << "toonbench: " << e.what() << "\n";
    return kRejected;
  } catch (const std::exception& e) {
    std::cerr << "toonbench: " << e.what() << "\n";
    return kRejected;
  }
  return kUsage;
}

}  // namespace
}  // namespace toonbench

int main(int argc, char** argv) { return toonbench::Main(argc, argv); }
