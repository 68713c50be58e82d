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

#include "toonbench/prompts.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace toonbench {
namespace {

constexpr std::string_view kJsonPrompt = "{{TASK}}";

constexpr std::string_view kToonPrompt = R"(You are to produce output STRICTLY in TOON format.
        TOON RULES:
        - Use 2-space indentation
        - Scalars: fieldName: value
        - Objects: fieldName: then nested fields indented
        - Arrays of objects:
            arrayName[N]:
              - field1: value1
                field2: value2
        - Tabular arrays (for simple data):
            arrayName[N]{field1,field2}:
              val1,val2
              val3,val4
        - [N] MUST equal actual row/item count
        - Output ONLY a ```toon code block
        Reference example:
        ```toon
        id: 100
        type: Sample
        metadata:
          version: 1
          author: Alex
        sections[2]:
          - code: A
            title: Introduction
            items[2]{id,value}:
              1,First
              2,Second
          - code: B
            title: Details
            items[1]{id,value}:
              3,Third
        summary:
          total: 3
          status: complete
        ```
        TASK:
        {{TASK}})";

constexpr std::string_view kRepairPrompt = R"({{PROMPT}}

PREVIOUS OUTPUT:
{{PREVIOUS_OUTPUT}}

ERRORS:
{{ERRORS}}

The previous output was rejected because of the errors above. Return the corrected full document {{FORMAT}}.
)";

const std::set<std::string>& Placeholders(const std::string& name) {
  static const std::map<std::string, std::set<std::string>> kAllowed = {
      {"json_prompt.txt", {"TASK"}},
      {"toon_prompt.txt", {"TASK"}},
      {"repair.txt", {"PROMPT", "PREVIOUS_OUTPUT", "ERRORS", "FORMAT"}},
  };
  return kAllowed.at(name);
}

// Calls `fn(name, begin, end)` for every `{{NAME}}` in `text`.
template <typename Fn>
void ForEachPlaceholder(std::string_view text, Fn fn) {
  size_t pos = 0;
  while ((pos = text.find("{{", pos)) != std::string_view::npos) {
    size_t close = text.find("}}", pos + 2);
    if (close == std::string_view::npos) return;
    fn(std::string(text.substr(pos + 2, close - pos - 2)), pos, close + 2);
    pos = close + 2;
  }
}

void CheckTemplate(const std::string& name, const std::string& text) {
  const auto& allowed = Placeholders(name);
  ForEachPlaceholder(text, [&](const std::string& key, size_t, size_t) {
    if (!allowed.count(key)) {
      throw Error("template " + name + ": unknown placeholder {{" + key + "}}");
    }
  });
}

std::string TrimTrailingNewlines(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

std::string_view TrackName(Track track) {
  switch (track) {
    case Track::kJ:
      return "J";
    case Track::kJso:
      return "JSO";
    case Track::kT:
      return "T";
  }
  return "?";
}

std::optional<Track> ParseTrack(std::string_view name) {
  std::string upper;
  for (char ch : name) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  for (Track t : kAllTracks) {
    if (TrackName(t) == upper) return t;
  }
  return std::nullopt;
}

std::string FillTemplate(std::string_view text, const std::map<std::string, std::string>& values) {
  std::string out;
  size_t copied = 0;
  ForEachPlaceholder(text, [&](const std::string& key, size_t begin, size_t end) {
    auto it = values.find(key);
    if (it == values.end()) throw Error("no value for placeholder {{" + key + "}}");
    out.append(text.substr(copied, begin - copied));
    size_t line_start = text.rfind('\n', begin);
    line_start = line_start == std::string_view::npos ? 0 : line_start + 1;
    std::string indent(begin - line_start, ' ');
    const std::string& value = it->second;
    for (size_t i = 0; i < value.size(); ++i) {
      out.push_back(value[i]);
      if (value[i] == '\n' && i + 1 < value.size() && value[i + 1] != '\n') out += indent;
    }
    copied = end;
  });
  out.append(text.substr(copied));
  return out;
}

PromptRenderer::PromptRenderer()
    : templates_{{"json_prompt.txt", std::string(kJsonPrompt)},
                 {"toon_prompt.txt", std::string(kToonPrompt)},
                 {"repair.txt", std::string(kRepairPrompt)}} {}

PromptRenderer PromptRenderer::FromDirectory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error("prompt template directory not found: " + dir.string());
  }
  PromptRenderer renderer;
  for (auto& [name, text] : renderer.templates_) {
    std::filesystem::path path = dir / name;
    if (!std::filesystem::exists(path)) continue;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    CheckTemplate(name, ss.str());
    text = ss.str();
  }
  return renderer;
}

const std::string& PromptRenderer::template_text(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw Error("unknown template " + name);
  return it->second;
}

std::string PromptRenderer::Render(const CaseSpec& spec, Track track) const {
  if (track == Track::kT) {
    return FillTemplate(templates_.at("toon_prompt.txt"), {{"TASK", spec.toon_task_body}});
  }
  return FillTemplate(templates_.at("json_prompt.txt"), {{"TASK", spec.task_body}});
}

std::string PromptRenderer::RenderRepair(const CaseSpec& spec, Track track,
                                         std::string_view previous_output,
                                         std::string_view error_text) const {
  if (error_text.empty()) throw UsageError("repair prompt needs a non-empty error text");
  std::string format = track == Track::kT
                           ? "in TOON format, as a single ```toon code block"
                           : "as JSON only";
  return FillTemplate(templates_.at("repair.txt"),
                      {{"PROMPT", TrimTrailingNewlines(Render(spec, track))},
                       {"PREVIOUS_OUTPUT", TrimTrailingNewlines(previous_output)},
                       {"ERRORS", TrimTrailingNewlines(error_text)},
                       {"FORMAT", format}});
}

std::string ToonReferenceExample() {
  std::string_view text = kToonPrompt;
  size_t begin = text.find("```toon\n") + 8;
  size_t end = text.find("```", begin);
  std::istringstream lines(std::string(text.substr(begin, end - begin)));
  std::string line;
  std::string out;
  while (std::getline(lines, line)) {
    size_t strip = std::min<size_t>(8, line.find_first_not_of(' '));
    std::string_view rest = std::string_view(line).substr(strip);
    if (rest.empty()) continue;
    out.append(rest);
    out.push_back('\n');
  }
  return out;
}

}  // namespace toonbench
