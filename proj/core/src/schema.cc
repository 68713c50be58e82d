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

#include "toonbench/schema.h"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include "lexing.h"
#include "toonbench/json.h"
#include "toonbench/toon.h"

namespace toonbench {

Schema Schema::Object(std::vector<SchemaField> fields) {
  std::unordered_set<std::string> seen;
  for (const SchemaField& f : fields) {
    if (!seen.insert(f.name).second) throw Error("duplicate schema field '" + f.name + "'");
  }
  Schema s(Kind::kObject);
  s.fields_ = std::move(fields);
  return s;
}

Schema Schema::ArrayOf(Schema element) {
  Schema s(Kind::kArray);
  s.element_ = std::make_shared<const Schema>(std::move(element));
  return s;
}

const Schema* Schema::FindField(std::string_view name) const {
  for (const SchemaField& f : fields_) {
    if (f.name == name) return &f.schema;
  }
  return nullptr;
}

std::string_view SchemaKindName(Schema::Kind kind) {
  switch (kind) {
    case Schema::Kind::kInt: return "int";
    case Schema::Kind::kFloat: return "float";
    case Schema::Kind::kStr: return "str";
    case Schema::Kind::kBool: return "bool";
    case Schema::Kind::kObject: return "object";
    case Schema::Kind::kArray: return "array";
  }
  return "?";
}

std::string ValidationError::Describe() const {
  if (expected == "absent") return FormatPath(path) + ": unexpected field";
  return FormatPath(path) + ": expected " + expected + ", found " + found;
}

namespace {

class Validator {
 public:
  std::vector<ValidationError> errors;

  Value Check(const Value& v, const Schema& s) {
    switch (s.kind()) {
      case Schema::Kind::kInt: {
        if (v.is_int()) return v;
        if (v.is_float() && std::trunc(v.as_float()) == v.as_float()) return Canonicalize(v);
        if (v.is_string() &&
            lex::ClassifyNumeral(v.as_string()) == lex::NumeralShape::kInteger) {
          return Value(*Integer::FromString(v.as_string()));
        }
        return Mismatch(v, s);
      }
      case Schema::Kind::kFloat: {
        if (v.is_number()) return v;
        if (v.is_string()) {
          auto shape = lex::ClassifyNumeral(v.as_string());
          if (auto n = lex::NumeralToValue(v.as_string(), shape)) return *n;
        }
        return Mismatch(v, s);
      }
      case Schema::Kind::kStr:
        return v.is_string() ? v : Mismatch(v, s);
      case Schema::Kind::kBool:
        return v.is_bool() ? v : Mismatch(v, s);
      case Schema::Kind::kArray: {
        if (!v.is_array()) return Mismatch(v, s);
        Array out;
        for (size_t i = 0; i < v.as_array().size(); ++i) {
          path_.emplace_back(i);
          out.push_back(Check(v.as_array()[i], s.element()));
          path_.pop_back();
        }
        return Value(std::move(out));
      }
      case Schema::Kind::kObject: {
        if (!v.is_object()) return Mismatch(v, s);
        toonbench::Object out;
        for (const SchemaField& f : s.fields()) {
          path_.emplace_back(f.name);
          if (const Value* member = v.Find(f.name)) {
            out.push_back(Member{f.name, Check(*member, f.schema)});
          } else {
            errors.push_back({path_, std::string(SchemaKindName(f.schema.kind())), "missing"});
          }
          path_.pop_back();
        }
        for (const Member& m : v.as_object()) {
          if (s.FindField(m.key) == nullptr) {
            path_.emplace_back(m.key);
            errors.push_back({path_, "absent", std::string(KindName(m.value.kind()))});
            path_.pop_back();
          }
        }
        return Value(std::move(out));
      }
    }
    return v;
  }

 private:
  Value Mismatch(const Value& v, const Schema& s) {
    errors.push_back({path_, std::string(SchemaKindName(s.kind())), std::string(KindName(v.kind()))});
    return v;
  }

  Path path_;
};

}  // namespace

std::vector<ValidationError> Validate(const Value& v, const Schema& s) {
  return ValidateAndCoerce(v, s).errors;
}

ValidationResult ValidateAndCoerce(const Value& v, const Schema& s) {
  Validator validator;
  Value coerced = validator.Check(v, s);
  return ValidationResult{std::move(validator.errors), std::move(coerced)};
}

GoldFiles WriteGold(const CaseSpec& spec, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory " + dir.string() + ": " + ec.message());
  GoldFiles files{dir / (spec.name + ".gold.json"), dir / (spec.name + ".gold.toon")};
  auto write = [](const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body << '\n';
    out.close();
    if (!out) throw Error("cannot write " + path.string());
  };
  write(files.json, EmitCanonicalJson(spec.gold));
  write(files.toon, EncodeToon(spec.gold));
  return files;
}

}  // namespace toonbench
