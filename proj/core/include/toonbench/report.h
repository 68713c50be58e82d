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

// Aggregation of results rows into report tables and efficiency figures.
//
// Accuracies are fractions (1.0 = 100%) and tokens are prompt + completion.
// Text output renders percentages half-up to one decimal and tokens half-up
// to an integer.

#ifndef TOONBENCH_REPORT_H_
#define TOONBENCH_REPORT_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "toonbench/harness.h"

namespace toonbench {

struct TrackAggregate {
  double one_shot = 0;
  double final = 0;
  double tokens = 0;
};

/// One table line: a model, a case or a scenario group.
struct AggregateRow {
  std::string label;
  std::map<Track, TrackAggregate> tracks;
};

/// Per model (byte-order sorted), per track: the mean over the model's runs
/// of the run-level one-shot accuracy, final accuracy and token total. Runs
/// must cover every case present in `rows`, else MissingCase.
std::vector<AggregateRow> AggregateByModel(std::span<const CaseRow> rows);

/// Per case, per track: the mean over all rows of that case (every model and
/// run) of one-shot success, final success and tokens. Built-in cases come
/// first in their usual order, other names follow in order of appearance.
std::vector<AggregateRow> AggregateByCase(std::span<const CaseRow> rows);

/// Named disjoint sets of cases.
struct Grouping {
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
};

/// aligned = users, order; non_aligned = invoice, company.
Grouping DefaultGrouping();

/// Parses `name=case+case;name=case`. Throws UsageError on empty or
/// overlapping groups.
Grouping ParseGrouping(std::string_view text);
std::string FormatGrouping(const Grouping& grouping);

/// Per group, per track: one-shot and final accuracy averaged over the
/// group's cases with equal weight per case, and the mean per-case tokens.
/// Throws MissingCase when a group names a case absent from `rows`.
std::vector<AggregateRow> AggregateByScenario(std::span<const CaseRow> rows,
                                              const Grouping& grouping);

struct EfficiencyPoint {
  std::string model;
  Track track;
  std::string group;
  double final_accuracy;  // mean over the group's cases
  double tokens;          // mean per-case prompt + completion tokens
  double efficiency;      // final_accuracy / (tokens / 1000)
};

/// For each model, group and track: the model's final accuracy and token
/// cost per case (means over its runs), averaged over the group's cases with
/// equal weight, and their ratio per 1000 tokens. Models are byte-order
/// sorted, then groups in grouping order, then tracks J, JSO, T. Throws
/// MissingCase when a model lacks a group case on a track it has.
std::vector<EfficiencyPoint> Efficiency(std::span<const CaseRow> rows, const Grouping& grouping);

struct Report {
  Grouping grouping;
  std::vector<AggregateRow> by_model;
  std::vector<AggregateRow> by_case;
  std::vector<AggregateRow> by_scenario;
  std::vector<EfficiencyPoint> efficiency;
};

Report BuildReport(std::span<const CaseRow> rows, const Grouping& grouping = DefaultGrouping());

/// "92.9%": half-up to one decimal.
std::string FormatPercent(double fraction);
/// Half-up to an integer.
std::string FormatTokens(double tokens);

/// The plain-text report: header, by-model, by-case and by-scenario tables,
/// then one efficiency table per group.
std::string FormatReportText(const Report& report);

/// Tab-separated `model track group efficiency` rows of one group, with a
/// header line.
std::string FormatEfficiencyTsv(const Report& report, const std::string& group);

/// Grouped bar chart (one bar per track for every model) of one group.
std::string RenderEfficiencySvg(const Report& report, const std::string& group);

/// Writes report.txt, and efficiency_<group>.tsv and efficiency_<group>.svg
/// per group, creating `out_dir` if needed. Returns the written paths.
/// Throws Error naming the path on I/O failure.
std::vector<std::filesystem::path> EmitReport(const Report& report,
                                              const std::filesystem::path& out_dir);

}  // namespace toonbench

#endif  // TOONBENCH_REPORT_H_
