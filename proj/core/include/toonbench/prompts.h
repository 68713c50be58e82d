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

// Prompt rendering for the three generation tracks and for repair attempts.
//
// Templates are plain text with `{{NAME}}` placeholders. Substitution is a
// single pass, so placeholder-like text inside a substituted value is left
// alone. When a placeholder is not at the start of its line, every following
// line of the substituted value is indented to the placeholder's column.

#ifndef TOONBENCH_PROMPTS_H_
#define TOONBENCH_PROMPTS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "toonbench/schema.h"

namespace toonbench {

/// J: plain JSON. JSO: JSON with a structured-output request option.
/// T: TOON with an in-context instruction block.
enum class Track : uint8_t { kJ, kJso, kT };

inline constexpr Track kAllTracks[] = {Track::kJ, Track::kJso, Track::kT};

/// "J", "JSO" or "T".
std::string_view TrackName(Track track);

/// Inverse of TrackName (case-insensitive); nullopt for unknown names.
std::optional<Track> ParseTrack(std::string_view name);

/// Template files, by name:
///   json_prompt.txt   J and JSO first attempt; placeholder TASK
///   toon_prompt.txt   T first attempt; placeholder TASK
///   repair.txt        later attempts; placeholders PROMPT, PREVIOUS_OUTPUT,
///                     ERRORS, FORMAT
class PromptRenderer {
 public:
  /// Uses the built-in templates.
  PromptRenderer();

  /// Built-in templates, with any of the files above found in `dir`
  /// replacing the corresponding built-in. Throws Error if `dir` is not a
  /// directory or a template names an unknown placeholder.
  static PromptRenderer FromDirectory(const std::filesystem::path& dir);

  /// First-attempt prompt. J and JSO render the case's task body verbatim;
  /// T renders the TOON instructions followed by the case's TOON task body.
  std::string Render(const CaseSpec& spec, Track track) const;

  /// Prompt for a later attempt: the first-attempt prompt, the latest
  /// rejected output and its error text. Throws UsageError if `error_text`
  /// is empty.
  std::string RenderRepair(const CaseSpec& spec, Track track, std::string_view previous_output,
                           std::string_view error_text) const;

  const std::string& template_text(const std::string& name) const;

 private:
  std::map<std::string, std::string> templates_;
};

/// The TOON reference example embedded in the built-in T instructions,
/// without its fence and indentation.
std::string ToonReferenceExample();

/// Replaces `{{NAME}}` placeholders in one pass. Throws Error on a
/// placeholder missing from `values`.
std::string FillTemplate(std::string_view text, const std::map<std::string, std::string>& values);

}  // namespace toonbench

#endif  // TOONBENCH_PROMPTS_H_
