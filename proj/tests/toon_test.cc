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

#include <gtest/gtest.h>

#include "random_value.h"
#include "test_util.h"
#include "toonbench/json.h"
#include "toonbench/schema.h"
#include "toonbench/toon.h"

namespace toonbench {
namespace {

using testing::RandomValueGenerator;
using testing::ReadFixture;
using testing::StripTrailingWhitespace;

ToonErrorKind ErrorKindOf(std::string_view text) {
  try {
    ParseToon(text);
  } catch (const ToonError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed without error:\n" << text;
  return ToonErrorKind::kMissingFence;
}

TEST(ToonParseTest, ReferenceExample) {
  ToonDocument doc = ParseToon(ReadFixture("reference_example.toon"));
  const Value& v = doc.root;
  EXPECT_EQ(v.at("id").as_int().ToString(), "100");
  EXPECT_EQ(v.at("metadata").at("author").as_string(), "Alex");
  const Value& sections = v.at("sections");
  ASSERT_EQ(sections.size(), 2u);
  const Value& items = sections.at(0).at("items");
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items.at(0).at("id").as_int().ToString(), "1");
  EXPECT_EQ(items.at(0).at("value").as_string(), "First");
  EXPECT_EQ(items.at(1).at("value").as_string(), "Second");
  EXPECT_EQ(sections.at(1).at("items").at(0).at("value").as_string(), "Third");
  EXPECT_EQ(v.at("summary").at("total").as_int().ToString(), "3");

  ASSERT_EQ(doc.arrays.size(), 3u);
  EXPECT_EQ(doc.arrays[0].layout, ArrayLayout::kList);
  EXPECT_EQ(FormatPath(doc.arrays[0].path), "sections");
  EXPECT_EQ(doc.arrays[1].layout, ArrayLayout::kTabular);
  EXPECT_EQ(FormatPath(doc.arrays[1].path), "sections[0].items");
  EXPECT_EQ(doc.arrays[1].headers, (std::vector<std::string>{"id", "value"}));
  EXPECT_EQ(doc.arrays[1].declared_count, 2u);
}

TEST(ToonParseTest, ReferenceExampleReencodes) {
  std::string listing = ReadFixture("reference_example.toon");
  EXPECT_EQ(StripTrailingWhitespace(EncodeToon(ParseToon(listing).root)),
            StripTrailingWhitespace(listing));
}

TEST(ToonParseTest, TabularArray) {
  Value v = ParseToon("items[2]{id,value}:\n  1,First\n  2,Second").root;
  EXPECT_EQ(EmitCanonicalJson(v), R"({"items":[{"id":1,"value":"First"},{"id":2,"value":"Second"}]})");
}

TEST(ToonParseTest, CountMismatchPointsAtHeader) {
  try {
    ParseToon("a: 1\nitems[3]{id,value}:\n  1,First\n  2,Second");
    FAIL();
  } catch (const ToonError& e) {
    EXPECT_EQ(e.kind(), ToonErrorKind::kCountMismatch);
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 7);
    EXPECT_NE(std::string(e.what()).find("count-mismatch"), std::string::npos);
  }
}

TEST(ToonParseTest, ZeroCount) {
  Value v = ParseToon("users[0]{id,name}:").root;
  ASSERT_TRUE(v.at("users").is_array());
  EXPECT_EQ(v.at("users").size(), 0u);
  EXPECT_EQ(ParseToon("xs[0]:").root.at("xs").size(), 0u);
  EXPECT_EQ(ErrorKindOf("users[0]{id,name}:\n  1,a"), ToonErrorKind::kCountMismatch);
}

TEST(ToonParseTest, ListItems) {
  Value v = ParseToon(
                "xs[4]:\n"
                "  - 1\n"
                "  - a: 1\n"
                "    b:\n"
                "      c: x\n"
                "  - [2]:\n"
                "    - true\n"
                "    - null\n"
                "  -")
                .root;
  EXPECT_EQ(EmitCanonicalJson(v), R"({"xs":[1,{"a":1,"b":{"c":"x"}},[true,null],{}]})");
}

TEST(ToonParseTest, FirstFieldArrayInListItem) {
  Value v = ParseToon(
                "xs[1]:\n"
                "  - rows[2]{a}:\n"
                "      1\n"
                "      2\n"
                "    k: v")
                .root;
  EXPECT_EQ(EmitCanonicalJson(v), R"({"xs":[{"k":"v","rows":[{"a":1},{"a":2}]}]})");
}

TEST(ToonParseTest, InlineArray) {
  Value v = ParseToon("tags[3]: a,\"b,c\",3").root;
  EXPECT_EQ(EmitCanonicalJson(v), R"({"tags":["a","b,c",3]})");
  EXPECT_EQ(ErrorKindOf("tags[2]: a,b,c"), ToonErrorKind::kCountMismatch);
}

TEST(ToonParseTest, ScalarLexing) {
  Value v = ParseToon(
                "a: true\nb: null\nc: -1.5e3\nd: 007\ne: hello world\nf: \"42\"\n"
                "g: \"a\\\"b\\\\c\\nd\"\nh: 1e999\ni: é")
                .root;
  EXPECT_TRUE(v.at("a").as_bool());
  EXPECT_TRUE(v.at("b").is_null());
  EXPECT_DOUBLE_EQ(v.at("c").as_float(), -1500.0);
  EXPECT_EQ(v.at("d").as_string(), "007");
  EXPECT_EQ(v.at("e").as_string(), "hello world");
  EXPECT_EQ(v.at("f").as_string(), "42");
  EXPECT_EQ(v.at("g").as_string(), "a\"b\\c\nd");
  EXPECT_EQ(v.at("h").as_string(), "1e999");
  EXPECT_EQ(v.at("i").as_string(), "é");
}

TEST(ToonParseTest, QuotedKeys) {
  Value v = ParseToon("\"a b\": 1\n\"\": 2\n\"x:y\"[1]:\n  - 3").root;
  EXPECT_EQ(EmitCanonicalJson(v), R"({"":2,"a b":1,"x:y":[3]})");
}

TEST(ToonParseTest, NestedEmptyObject) {
  EXPECT_EQ(EmitCanonicalJson(ParseToon("a:\nb: 1").root), R"({"a":{},"b":1})");
}

TEST(ToonParseTest, Leniency) {
  EXPECT_EQ(EmitCanonicalJson(ParseToon("\na: 1\r\n\nb:   2  \n").root), R"({"a":1,"b":2})");
  EXPECT_EQ(EmitCanonicalJson(ParseToon("").root), "{}");
}

TEST(ToonParseTest, ErrorKinds) {
  EXPECT_EQ(ErrorKindOf("a:\n   b: 1"), ToonErrorKind::kBadIndent);
  EXPECT_EQ(ErrorKindOf("a:\n\tb: 1"), ToonErrorKind::kBadIndent);
  EXPECT_EQ(ErrorKindOf("a: 1\n  b: 2"), ToonErrorKind::kBadIndent);
  EXPECT_EQ(ErrorKindOf(" a: 1"), ToonErrorKind::kBadIndent);
  EXPECT_EQ(ErrorKindOf("t[1]{a,b}:\n  1"), ToonErrorKind::kArityMismatch);
  EXPECT_EQ(ErrorKindOf("t[1]{a,b}:\n  1,2,3"), ToonErrorKind::kArityMismatch);
  EXPECT_EQ(ErrorKindOf("a: \"x\\q\""), ToonErrorKind::kBadEscape);
  EXPECT_EQ(ErrorKindOf("a: \"open"), ToonErrorKind::kUnexpectedToken);
  EXPECT_EQ(ErrorKindOf("just text"), ToonErrorKind::kUnexpectedToken);
  EXPECT_EQ(ErrorKindOf("a: 1\na: 2"), ToonErrorKind::kUnexpectedToken);
  EXPECT_EQ(ErrorKindOf("t[1]{a,a}:\n  1,2"), ToonErrorKind::kUnexpectedToken);
  EXPECT_EQ(ErrorKindOf("- 1"), ToonErrorKind::kUnexpectedToken);
  EXPECT_EQ(ErrorKindOf("a[x]:"), ToonErrorKind::kUnexpectedToken);
  EXPECT_EQ(ErrorKindOf("a: \xff"), ToonErrorKind::kUnexpectedToken);
}

TEST(ToonParseTest, ErrorLocality) {
  const char* bad[] = {
      "a:\n   b: 1",          "a: 1\nb: \"x\\q\"",       "t[1]{a,b}:\n  1",
      "x: 1\nt[2]:\n  - 1",  "a: \"open",                "q\n",
      "a:\n  b:\n     c: 1",  "t[1]{a}:\n  \"x\"y",       "a: 1\na: 2",
      "k[99999999999]:",     "xs[1]:\n  -x",             "a: 1\n\"k\" z: 1",
  };
  for (const char* text : bad) {
    try {
      ParseToon(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ToonError& e) {
      std::vector<std::string> lines;
      std::stringstream ss(text);
      for (std::string l; std::getline(ss, l);) lines.push_back(l);
      ASSERT_GE(e.line(), 1) << text;
      ASSERT_LE(e.line(), static_cast<int>(lines.size())) << text;
      EXPECT_GE(e.column(), 1) << text;
      EXPECT_LE(e.column(), static_cast<int>(lines[e.line() - 1].size()) + 1) << e.what();
    }
  }
}

TEST(ToonEncodeTest, OrderGold) {
  std::string toon = EncodeToon(FindCase("order").gold);
  EXPECT_NE(toon.find("items[2]{sku,qty,price}:"), std::string::npos) << toon;
  EXPECT_NE(toon.find("\n  A1,2,9.99"), std::string::npos) << toon;
  EXPECT_EQ(toon,
            "id: 101\n"
            "customer:\n"
            "  id: 9\n"
            "  name: Ada\n"
            "items[2]{sku,qty,price}:\n"
            "  A1,2,9.99\n"
            "  B2,1,14.5");
}

TEST(ToonEncodeTest, EmptyAndRootErrors) {
  EXPECT_EQ(EncodeToon(Value(Object{})), "");
  EXPECT_THROW(EncodeToon(Value::MakeArray({1})), NonObjectRootError);
  EXPECT_THROW(EncodeToon(Value(1)), NonObjectRootError);
}

TEST(ToonEncodeTest, LayoutSelection) {
  Value mixed = Value::MakeObject(
      {{"a", Value::MakeArray({Value::MakeObject({{"x", 1}}), Value::MakeObject({{"y", 1}})})},
       {"b", Value::MakeArray({Value::MakeObject({{"x", Value::MakeArray({})}})})},
       {"c", Value::MakeArray({Value::MakeObject({{"x", 1}, {"y", 2}}),
                               Value::MakeObject({{"y", 3}, {"x", 4}})})},
       {"d", Value::MakeArray({1, "two"})},
       {"e", Value::MakeArray({})}});
  EXPECT_EQ(EncodeToon(mixed),
            "a[2]:\n"
            "  - x: 1\n"
            "  - y: 1\n"
            "b[1]:\n"
            "  - x[0]:\n"
            "c[2]{x,y}:\n"
            "  1,2\n"
            "  4,3\n"
            "d[2]:\n"
            "  - 1\n"
            "  - two\n"
            "e[0]:");
}

TEST(ToonEncodeTest, QuotingRules) {
  EXPECT_TRUE(IsSafeUnquotedToonString("hello world"));
  EXPECT_TRUE(IsSafeUnquotedToonString("007"));
  EXPECT_TRUE(IsSafeUnquotedToonString("- x"));
  for (const char* s : {"", " a", "a ", "a,b", "a:b", "\"", "true", "null", "12", "-1.5e3",
                        "x]", "{", "a\\b", "tab\t"}) {
    EXPECT_FALSE(IsSafeUnquotedToonString(s)) << s;
  }
  EXPECT_EQ(ToonKey("name"), "name");
  EXPECT_EQ(ToonKey("a b"), "\"a b\"");
  EXPECT_EQ(ToonKey("1"), "\"1\"");
}

TEST(ToonEncodeTest, ControlCharactersRoundTrip) {
  Value v = Value::MakeObject({{"s", std::string("a\x01z\x7f\r\t\n", 7)}});
  EXPECT_TRUE(DeepEqual(ParseToon(EncodeToon(v)).root, v).equal) << EncodeToon(v);
}

TEST(ToonRoundTripTest, RandomValues) {
  RandomValueGenerator gen(5);
  for (int i = 0; i < 10000; ++i) {
    Value v = gen.Object(4);
    std::string text = EncodeToon(v);
    Value back;
    try {
      back = ParseToon(text).root;
    } catch (const ToonError& e) {
      FAIL() << e.what() << "\n" << text << "\n" << EmitCanonicalJson(v);
    }
    Comparison c = DeepEqual(back, v);
    ASSERT_TRUE(c.equal) << c.diff->Describe() << "\n" << text;
  }
}

TEST(ToonRoundTripTest, DeclaredCountsMatch) {
  RandomValueGenerator gen(17);
  for (int i = 0; i < 500; ++i) {
    ToonDocument doc = ParseToon(EncodeToon(gen.Object(4)));
    for (const ArrayInfo& a : doc.arrays) {
      EXPECT_NE(a.layout, ArrayLayout::kInline);
    }
  }
}

TEST(ToonRoundTripTest, GoldCases) {
  for (const CaseSpec& c : BuiltinCases()) {
    EXPECT_TRUE(DeepEqual(ParseToon(EncodeToon(c.gold)).root, c.gold).equal) << c.name;
  }
}

TEST(ExtractToonBlockTest, FenceStripping) {
  bool fenced = false;
  EXPECT_EQ(ExtractToonBlock("Here you go:\n```toon\nid: 1\n```", &fenced), "id: 1");
  EXPECT_TRUE(fenced);
  EXPECT_EQ(ExtractToonBlock("```toon\r\na: 1\r\n```\r\nbye"), "a: 1");
  EXPECT_EQ(ExtractToonBlock("```\nid: 2\n```"), "id: 2");
  EXPECT_EQ(ExtractToonBlock("```toon\nid: 3\n"), "id: 3\n");
  EXPECT_EQ(ExtractToonBlock("```json\n{}\n```\n```toon\nid: 4\n```"), "id: 4");
}

TEST(ExtractToonBlockTest, NoFenceFallback) {
  bool fenced = true;
  EXPECT_EQ(ExtractToonBlock("id: 1\n", &fenced), "id: 1\n");
  EXPECT_FALSE(fenced);
}

TEST(ExtractToonBlockTest, MissingFence) {
  try {
    ExtractToonBlock("Sorry, I cannot.");
    FAIL();
  } catch (const ToonError& e) {
    EXPECT_EQ(e.kind(), ToonErrorKind::kMissingFence);
  }
}

TEST(ToonToJsonTest, Examples) {
  EXPECT_EQ(ToonToJson("id: 101\ncustomer:\n  id: 9\n  name: Ada"),
            R"({"customer":{"id":9,"name":"Ada"},"id":101})");
  std::string ref = ToonToJson(ReadFixture("reference_example.toon"));
  EXPECT_NE(ref.find(R"("summary":{"status":"complete","total":3})"), std::string::npos) << ref;
  EXPECT_THROW(ToonToJson("a:\n   b: 1"), ToonError);
}

}  // namespace
}  // namespace toonbench
