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


// Scripted model outputs and scenarios shared by the harness tests and the
// acceptance binary.

#ifndef TOONBENCH_TESTS_HARNESS_FIXTURES_H_
#define TOONBENCH_TESTS_HARNESS_FIXTURES_H_

#include <memory>
#include <string>
#include <vector>

#include "toonbench/harness.h"
#include "toonbench/json.h"
#include "toonbench/toon.h"

namespace toonbench::testing {

inline std::string Fenced(std::string toon) {
  if (!toon.empty() && toon.back() != '\n') toon += '\n';
  return "```toon\n" + toon + "```\n";
}

// The gold value written as a model would answer on `track`.
inline std::string GoldOutput(const CaseSpec& spec, Track track) {
  if (track == Track::kT) return Fenced(EncodeToon(spec.gold));
  return EmitCanonicalJson(spec.gold);
}

// Well-formed, schema-valid output whose first top-level scalar differs from
// gold: a string gets a suffix, a number a trailing digit.
inline std::string WrongValueOutput(const CaseSpec& spec, Track track) {
  Object members = spec.gold.as_object();
  for (Member& m : members) {
    if (m.value.is_string()) {
      m.value = Value(m.value.as_string() + "-wrong");
    } else if (m.value.is_int()) {
      m.value = Value(*Integer::FromString(m.value.as_int().ToString() + "7"));
    } else {
      continue;
    }
    Value v(std::move(members));
    return track == Track::kT ? Fenced(EncodeToon(v)) : EmitCanonicalJson(v);
  }
  // No top-level scalar: drop the first array element instead.
  members = spec.gold.as_object();
  for (Member& m : members) {
    if (m.value.is_array() && m.value.size() > 1) {
      Array items = m.value.as_array();
      items.pop_back();
      m.value = Value(std::move(items));
      Value v(std::move(members));
      return track == Track::kT ? Fenced(EncodeToon(v)) : EmitCanonicalJson(v);
    }
  }
  return "{}";
}

// Order gold in TOON with the items header claiming 3 rows over 2.
inline std::string OrderToonCountThreeOverTwo() {
  std::string toon = EncodeToon(FindCase("order").gold);
  size_t at = toon.find("items[2]");
  toon.replace(at, 8, "items[3]");
  return Fenced(toon);
}

}  // namespace toonbench::testing

#endif  // TOONBENCH_TESTS_HARNESS_FIXTURES_H_
