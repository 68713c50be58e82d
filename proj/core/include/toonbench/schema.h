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

#ifndef TOONBENCH_SCHEMA_H_
#define TOONBENCH_SCHEMA_H_

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "toonbench/value.h"

namespace toonbench {

struct SchemaField;

/// Structural type of a benchmark payload. Object fields are all required and
/// ordered; the order is the canonical key order used by the TOON grammar.
class Schema {
 public:
  enum class Kind : uint8_t { kInt, kFloat, kStr, kBool, kObject, kArray };

  static Schema Int() { return Schema(Kind::kInt); }
  static Schema Float() { return Schema(Kind::kFloat); }
  static Schema Str() { return Schema(Kind::kStr); }
  static Schema Bool() { return Schema(Kind::kBool); }
  /// Throws Error on duplicate field names.
  static Schema Object(std::vector<SchemaField> fields);
  static Schema ArrayOf(Schema element);

  Kind kind() const { return kind_; }
  bool is_scalar() const { return kind_ != Kind::kObject && kind_ != Kind::kArray; }
  const std::vector<SchemaField>& fields() const { return fields_; }
  const Schema& element() const { return *element_; }
  const Schema* FindField(std::string_view name) const;

 private:
  explicit Schema(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<SchemaField> fields_;
  std::shared_ptr<const Schema> element_;
};

struct SchemaField {
  std::string name;
  Schema schema;
};

std::string_view SchemaKindName(Schema::Kind kind);

struct ValidationError {
  Path path;
  std::string expected;  // schema kind, or "absent" for an unknown field
  std::string found;     // value kind, or "missing"

  std::string Describe() const;
  friend bool operator==(const ValidationError&, const ValidationError&) = default;
};

struct ValidationResult {
  std::vector<ValidationError> errors;
  Value coerced;  // meaningful only when errors is empty
};

/// Lax structural validation. A string holding an exact numeral satisfies
/// Int/Float, an Int satisfies Float, an integral Float satisfies Int. All
/// object fields are required and unknown fields are errors.
std::vector<ValidationError> Validate(const Value& v, const Schema& s);

/// Validate, and also return `v` with the lax coercions applied.
ValidationResult ValidateAndCoerce(const Value& v, const Schema& s);

/// One benchmark case. `task_body` is the JSON-track request; the TOON track
/// uses `toon_task_body` under its universal instruction block.
struct CaseSpec {
  std::string name;
  std::string task_body;
  std::string toon_task_body;
  Schema schema;
  Value gold;
};

/// users, order, company, invoice, in that order.
const std::vector<CaseSpec>& BuiltinCases();

/// Throws Error for unknown names.
const CaseSpec& FindCase(std::string_view name);

struct GoldFiles {
  std::filesystem::path json;
  std::filesystem::path toon;
};

/// Writes `<name>.gold.json` (canonical JSON) and `<name>.gold.toon`, both
/// newline-terminated.
GoldFiles WriteGold(const CaseSpec& spec, const std::filesystem::path& dir);

}  // namespace toonbench

#endif  // TOONBENCH_SCHEMA_H_
