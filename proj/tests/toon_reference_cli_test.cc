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

// Cross-checks the codec against the reference TOON command-line tool. The
// tool is located through $TOON_CLI; the tests skip when it is not set.

#include <cstdio>
#include <cstdlib>

#include <gtest/gtest.h>

#include "test_util.h"
#include "toonbench/json.h"
#include "toonbench/schema.h"
#include "toonbench/toon.h"

namespace toonbench {
namespace {

using testing::ReadFile;
using testing::StripTrailingWhitespace;
using testing::TempDir;

std::string ReferenceCli() {
  const char* env = std::getenv("TOON_CLI");
  if (env == nullptr || *env == '\0' || !std::filesystem::exists(env)) return {};
  return env;
}

// Runs the reference tool on `input`, writing `output`.
bool RunCli(const std::string& cli, const std::string& mode, const std::filesystem::path& input,
            const std::filesystem::path& output) {
  std::string cmd = "'" + cli + "' " + mode + " '" + input.string() + "' -o '" +
                    output.string() + "' > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

class ReferenceCliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    cli_ = ReferenceCli();
    if (cli_.empty()) GTEST_SKIP() << "TOON_CLI not set; reference tool unavailable";
  }
  std::string cli_;
};

TEST_F(ReferenceCliTest, EncoderMatchesReferenceOnGoldCases) {
  TempDir dir("refcli_enc");
  for (const CaseSpec& c : BuiltinCases()) {
    GoldFiles files = WriteGold(c, dir.path());
    std::filesystem::path out = dir.path() / (c.name + ".ref.toon");
    ASSERT_TRUE(RunCli(cli_, "--encode", files.json, out)) << c.name;
    // The reference tool keeps the input key order, so compare against our
    // encoding of the same (canonical) JSON document.
    std::string ours = EncodeToon(ParseJson(ReadFile(files.json)));
    EXPECT_EQ(StripTrailingWhitespace(ReadFile(out)), StripTrailingWhitespace(ours)) << c.name;
  }
}

TEST_F(ReferenceCliTest, ReferenceDecodesOurGoldToon) {
  TempDir dir("refcli_dec");
  for (const CaseSpec& c : BuiltinCases()) {
    GoldFiles files = WriteGold(c, dir.path());
    std::filesystem::path out = dir.path() / (c.name + ".ref.json");
    ASSERT_TRUE(RunCli(cli_, "--decode", files.toon, out)) << c.name;
    EXPECT_TRUE(DeepEqual(ParseJson(ReadFile(out)), c.gold).equal) << c.name;
    EXPECT_TRUE(DeepEqual(ParseToon(ReadFile(files.toon)).root, c.gold).equal) << c.name;
  }
}

TEST_F(ReferenceCliTest, ReferenceExampleAgrees) {
  TempDir dir("refcli_ref");
  std::filesystem::path out = dir.path() / "ref.json";
  ASSERT_TRUE(RunCli(cli_, "--decode", testing::FixturePath("reference_example.toon"), out));
  EXPECT_TRUE(DeepEqual(ParseJson(ReadFile(out)),
                        ParseToon(testing::ReadFixture("reference_example.toon")).root)
                  .equal);
}

}  // namespace
}  // namespace toonbench
