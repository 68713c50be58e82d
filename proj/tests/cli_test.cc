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

#include <sys/wait.h>

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "test_util.h"
#include "toonbench/harness.h"
#include "toonbench/json.h"
#include "toonbench/report.h"
#include "toonbench/schema.h"
#include "toonbench/toon.h"

namespace toonbench {
namespace {

using testing::FixturePath;
using testing::ReadFile;
using testing::TempDir;

struct Result {
  int status;
  std::string out;
  std::string err;
};

// Runs the CLI with `args` (already shell-quoted), capturing both streams.
Result RunCli(const TempDir& dir, const std::string& args) {
  std::filesystem::path out = dir.path() / "stdout.txt";
  std::filesystem::path err = dir.path() / "stderr.txt";
  std::string cmd = std::string(TOONBENCH_CLI) + " " + args + " </dev/null >" + out.string() +
                    " 2>" + err.string();
  int raw = std::system(cmd.c_str());
  int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return {status, ReadFile(out), ReadFile(err)};
}

void Write(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

TEST(CliTest, GoldThenDecodeMatchesGoldJson) {
  TempDir dir("cli_gold");
  std::string gold = (dir.path() / "gold").string();
  Result r = RunCli(dir, "gold --out " + gold);
  ASSERT_EQ(r.status, 0) << r.err;
  for (const CaseSpec& c : BuiltinCases()) {
    Result d = RunCli(dir, "decode " + gold + "/" + c.name + ".gold.toon");
    ASSERT_EQ(d.status, 0) << d.err;
    EXPECT_EQ(d.out, ReadFile(gold + "/" + c.name + ".gold.json")) << c.name;
    EXPECT_TRUE(d.err.empty());
  }
  Value order = ParseJson(ReadFile(gold + "/order.gold.json"));
  EXPECT_EQ(order.Find("id")->as_int().ToString(), "101");
}

TEST(CliTest, EncodeThenDecodeIsIdentity) {
  TempDir dir("cli_encode");
  for (const CaseSpec& c : BuiltinCases()) {
    std::filesystem::path json = dir.path() / (c.name + ".json");
    std::filesystem::path toon = dir.path() / (c.name + ".toon");
    Write(json, EmitCanonicalJson(c.gold) + "\n");
    ASSERT_EQ(RunCli(dir, "encode " + json.string() + " -o " + toon.string()).status, 0);
    Result d = RunCli(dir, "decode " + toon.string());
    ASSERT_EQ(d.status, 0) << d.err;
    EXPECT_EQ(d.out, ReadFile(json)) << c.name;
  }
}

TEST(CliTest, CountMismatchExitsOne) {
  TempDir dir("cli_mismatch");
  std::string toon = EncodeToon(FindCase("order").gold);
  toon.replace(toon.find("items[2]"), 8, "items[3]");
  Write(dir.path() / "bad.toon", toon);
  Result r = RunCli(dir, "decode " + (dir.path() / "bad.toon").string());
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("count-mismatch"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("line "), std::string::npos) << r.err;
}

TEST(CliTest, UsageErrorsExitTwo) {
  TempDir dir("cli_usage");
  EXPECT_EQ(RunCli(dir, "").status, 2);
  EXPECT_EQ(RunCli(dir, "frobnicate").status, 2);
  EXPECT_EQ(RunCli(dir, "decode /nonexistent/x.toon").status, 2);
  EXPECT_EQ(RunCli(dir, "validate x.json --case weather").status, 2);
  EXPECT_EQ(RunCli(dir, "bench").status, 2);
  EXPECT_EQ(RunCli(dir, "bench --config /nonexistent/bench.cfg").status, 2);
  Write(dir.path() / "bad.cfg", "provider = mock\nruns = 0\nmodels = a\n");
  Result r = RunCli(dir, "bench --config " + (dir.path() / "bad.cfg").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(RunCli(dir, "--help").status, 0);
}

TEST(CliTest, ValidateReportsSchemaErrorsAndGoldMismatch) {
  TempDir dir("cli_validate");
  const CaseSpec& order = FindCase("order");
  Write(dir.path() / "gold.json", EmitCanonicalJson(order.gold));
  Result ok = RunCli(dir, "validate " + (dir.path() / "gold.json").string() + " -c order --against-gold");
  EXPECT_EQ(ok.status, 0) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("gold: equal"), std::string::npos);

  Result wrong = RunCli(dir, "validate " + (dir.path() / "gold.json").string() + " -c users");
  EXPECT_EQ(wrong.status, 1);
  EXPECT_NE(wrong.out.find("expected array, found missing"), std::string::npos) << wrong.out;

  Write(dir.path() / "off.toon", "```toon\n" + EncodeToon(order.gold) + "\n```\n");
  std::string off = ReadFile(dir.path() / "off.toon");
  off.replace(off.find("Ada"), 3, "Bob");
  Write(dir.path() / "off.toon", off);
  Result mismatch = RunCli(dir, "validate " + (dir.path() / "off.toon").string() + " -c order --against-gold");
  EXPECT_EQ(mismatch.status, 1);
  EXPECT_NE(mismatch.out.find("value-mismatch at customer.name"), std::string::npos) << mismatch.out;
}

TEST(CliTest, BenchWithMockConfigWritesAllRows) {
  TempDir dir("cli_bench");
  Write(dir.path() / "mock.cfg",
        "# mock benchmark\nprovider = mock\nmodels = mock/a\nruns = 10\nparallelism = 2\n"
        "output = out/results.csv\nattempts_log = out/attempts.jsonl\n");
  std::filesystem::create_directories(dir.path() / "out");
  Result r = RunCli(dir, "bench -q --config " + (dir.path() / "mock.cfg").string() + " --report " +
                          (dir.path() / "report").string());
  ASSERT_EQ(r.status, 0) << r.err;
  std::vector<CaseRow> rows = ReadResultsCsv(dir.path() / "out/results.csv");
  EXPECT_EQ(rows.size(), 120u);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "report/report.txt"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "report/efficiency_aligned.svg"));

  Result rep = RunCli(dir, "report " + (dir.path() / "out/results.csv").string());
  ASSERT_EQ(rep.status, 0) << rep.err;
  EXPECT_EQ(rep.out, ReadFile(dir.path() / "report/report.txt"));
}

TEST(CliTest, ReportRendersReferenceTable) {
  TempDir dir("cli_report");
  Result r = RunCli(dir, "report " + FixturePath("reference_by_case.csv") +
                          " --grouping 'users=users;rest=order+company+invoice'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("92.9%"), std::string::npos);
  EXPECT_NE(r.out.find("Efficiency by model, group users"), std::string::npos);
  EXPECT_EQ(RunCli(dir, "report " + FixturePath("reference_by_case.csv") + " --grouping 'a='").status,
            2);
  Write(dir.path() / "bad.csv", "model,run\n");
  EXPECT_EQ(RunCli(dir, "report " + (dir.path() / "bad.csv").string()).status, 1);
}

TEST(CliTest, MaskSimGeneratesValidDocument) {
  TempDir dir("cli_mask");
  std::filesystem::path steps = dir.path() / "steps.tsv";
  Result r = RunCli(dir, "mask-sim --vocab " + FixturePath("toy_vocab.tsv") +
                          " --case order --seed 7 --steps " + steps.string());
  ASSERT_EQ(r.status, 0) << r.err;
  ToonDocument doc = ParseToon(r.out);
  EXPECT_TRUE(Validate(doc.root, FindCase("order").schema).empty()) << r.out;
  std::string log = ReadFile(steps);
  EXPECT_EQ(log.rfind("step\ttoken\tbytes\tallowed\teos_allowed\n", 0), 0u);
  EXPECT_NE(log.find("<eos>"), std::string::npos);

  Result again = RunCli(dir, "mask-sim --vocab " + FixturePath("toy_vocab.tsv") + " --case order --seed 7");
  EXPECT_EQ(again.out, r.out);
}

}  // namespace
}  // namespace toonbench
