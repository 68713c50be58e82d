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

#include "toonbench/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace toonbench {
namespace {

struct Sums {
  double one_shot = 0;
  double final = 0;
  double tokens = 0;
  int n = 0;

  void Add(double o, double f, double t) {
    one_shot += o;
    final += f;
    tokens += t;
    ++n;
  }
  TrackAggregate Mean() const { return {one_shot / n, final / n, tokens / n}; }
};

// Case names in `rows`: built-in cases in their usual order, then the rest in
// order of appearance.
std::vector<std::string> CaseNames(std::span<const CaseRow> rows) {
  std::vector<std::string> names;
  std::set<std::string> present;
  for (const CaseRow& r : rows) present.insert(r.case_name);
  for (const CaseSpec& c : BuiltinCases()) {
    if (present.count(c.name)) names.push_back(c.name);
  }
  for (const CaseRow& r : rows) {
    if (std::find(names.begin(), names.end(), r.case_name) == names.end()) {
      names.push_back(r.case_name);
    }
  }
  return names;
}

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string RenderTable(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width(header.size());
  for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (size_t c = 0; c < cells.size(); ++c) {
      std::string pad(width[c] - cells[c].size(), ' ');
      if (c == 0) {
        out += cells[c] + pad;
      } else {
        out += "  " + pad + cells[c];
      }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + '\n';
  };
  std::string out = line(header);
  size_t total = 0;
  for (size_t w : width) total += w;
  out += std::string(total + 2 * (width.size() - 1), '-') + '\n';
  for (const auto& row : rows) out += line(row);
  return out;
}

std::string TrackTable(const std::string& label, const std::vector<AggregateRow>& rows) {
  std::vector<std::string> header = {label};
  for (Track t : kAllTracks) {
    std::string name(TrackName(t));
    header.insert(header.end(), {name + " 1-S", name + " Fin", name + " Tok"});
  }
  std::vector<std::vector<std::string>> body;
  for (const AggregateRow& row : rows) {
    std::vector<std::string> cells = {row.label};
    for (Track t : kAllTracks) {
      auto it = row.tracks.find(t);
      if (it == row.tracks.end()) {
        cells.insert(cells.end(), {"-", "-", "-"});
      } else {
        cells.insert(cells.end(), {FormatPercent(it->second.one_shot),
                                   FormatPercent(it->second.final),
                                   FormatTokens(it->second.tokens)});
      }
    }
    body.push_back(std::move(cells));
  }
  return RenderTable(header, body);
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

bool ValidGroupName(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
  });
}

void CheckGrouping(const Grouping& grouping) {
  if (grouping.groups.empty()) throw UsageError("grouping has no groups");
  std::set<std::string> names, cases;
  for (const auto& [name, members] : grouping.groups) {
    if (!ValidGroupName(name)) throw UsageError("bad group name '" + name + "'");
    if (!names.insert(name).second) throw UsageError("group '" + name + "' given twice");
    if (members.empty()) throw UsageError("group '" + name + "' has no cases");
    for (const std::string& c : members) {
      if (!cases.insert(c).second) throw UsageError("case '" + c + "' is in two groups");
    }
  }
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw Error("cannot write " + path.string());
}

}  // namespace

std::vector<AggregateRow> AggregateByModel(std::span<const CaseRow> rows) {
  std::vector<std::string> cases = CaseNames(rows);
  std::map<std::string, std::vector<CaseRow>> by_model;
  for (const CaseRow& r : rows) by_model[r.model].push_back(r);
  std::vector<AggregateRow> out;
  for (const auto& [model, model_rows] : by_model) {
    std::map<Track, Sums> sums;
    for (const RunResult& run : GroupRuns(model_rows, cases)) {
      for (const auto& [track, m] : run.metrics) {
        sums[track].Add(m.one_shot, m.final, static_cast<double>(m.tokens));
      }
    }
    AggregateRow row{model, {}};
    for (const auto& [track, s] : sums) row.tracks[track] = s.Mean();
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<AggregateRow> AggregateByCase(std::span<const CaseRow> rows) {
  std::map<std::string, std::map<Track, Sums>> sums;
  for (const CaseRow& r : rows) {
    sums[r.case_name][r.track].Add(r.one_shot_success ? 1 : 0, r.final_success ? 1 : 0,
                                   static_cast<double>(r.prompt_tokens + r.completion_tokens));
  }
  std::vector<AggregateRow> out;
  for (const std::string& name : CaseNames(rows)) {
    AggregateRow row{name, {}};
    for (const auto& [track, s] : sums[name]) row.tracks[track] = s.Mean();
    out.push_back(std::move(row));
  }
  return out;
}

Grouping DefaultGrouping() {
  return Grouping{{{"aligned", {"users", "order"}}, {"non_aligned", {"invoice", "company"}}}};
}

Grouping ParseGrouping(std::string_view text) {
  Grouping grouping;
  std::stringstream ss{std::string(text)};
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    size_t eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("grouping entry needs name=cases: '" + part + "'");
    std::vector<std::string> members;
    std::stringstream cs(part.substr(eq + 1));
    std::string c;
    while (std::getline(cs, c, '+')) {
      if (!c.empty()) members.push_back(c);
    }
    grouping.groups.emplace_back(part.substr(0, eq), std::move(members));
  }
  CheckGrouping(grouping);
  return grouping;
}

std::string FormatGrouping(const Grouping& grouping) {
  std::string out;
  for (const auto& [name, members] : grouping.groups) {
    if (!out.empty()) out += ';';
    out += name + '=';
    for (size_t i = 0; i < members.size(); ++i) out += (i ? "+" : "") + members[i];
  }
  return out;
}

std::vector<AggregateRow> AggregateByScenario(std::span<const CaseRow> rows,
                                              const Grouping& grouping) {
  CheckGrouping(grouping);
  std::map<std::string, AggregateRow> by_case;
  for (AggregateRow& row : AggregateByCase(rows)) by_case[row.label] = std::move(row);
  std::vector<AggregateRow> out;
  for (const auto& [name, members] : grouping.groups) {
    AggregateRow row{name, {}};
    for (Track t : kAllTracks) {
      Sums s;
      for (const std::string& c : members) {
        auto it = by_case.find(c);
        if (it == by_case.end()) throw MissingCase("group " + name + " names absent case " + c);
        auto tr = it->second.tracks.find(t);
        if (tr == it->second.tracks.end()) break;
        s.Add(tr->second.one_shot, tr->second.final, tr->second.tokens);
      }
      if (s.n == static_cast<int>(members.size())) row.tracks[t] = s.Mean();
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<EfficiencyPoint> Efficiency(std::span<const CaseRow> rows, const Grouping& grouping) {
  CheckGrouping(grouping);
  // model -> track -> case -> sums
  std::map<std::string, std::map<Track, std::map<std::string, Sums>>> cells;
  for (const CaseRow& r : rows) {
    cells[r.model][r.track][r.case_name].Add(
        0, r.final_success ? 1 : 0, static_cast<double>(r.prompt_tokens + r.completion_tokens));
  }
  std::vector<EfficiencyPoint> out;
  for (const auto& [model, tracks] : cells) {
    for (const auto& [group, members] : grouping.groups) {
      for (Track t : kAllTracks) {
        auto tr = tracks.find(t);
        if (tr == tracks.end()) continue;
        double acc = 0, tokens = 0;
        for (const std::string& c : members) {
          auto it = tr->second.find(c);
          if (it == tr->second.end()) {
            throw MissingCase("model " + model + " has no " + std::string(TrackName(t)) +
                              " rows for case " + c + " of group " + group);
          }
          TrackAggregate mean = it->second.Mean();
          acc += mean.final;
          tokens += mean.tokens;
        }
        acc /= static_cast<double>(members.size());
        tokens /= static_cast<double>(members.size());
        if (!(tokens > 0)) {
          throw Error("model " + model + " group " + group + ": zero token cost");
        }
        out.push_back({model, t, group, acc, tokens, acc / (tokens / 1000.0)});
      }
    }
  }
  return out;
}

Report BuildReport(std::span<const CaseRow> rows, const Grouping& grouping) {
  Report r;
  r.grouping = grouping;
  r.by_model = AggregateByModel(rows);
  r.by_case = AggregateByCase(rows);
  r.by_scenario = AggregateByScenario(rows, grouping);
  r.efficiency = Efficiency(rows, grouping);
  return r;
}

std::string FormatPercent(double fraction) {
  auto tenths = static_cast<long long>(std::floor(fraction * 1000.0 + 0.5 + 1e-9));
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

std::string FormatTokens(double tokens) {
  return std::to_string(static_cast<long long>(std::floor(tokens + 0.5 + 1e-9)));
}

std::string FormatReportText(const Report& report) {
  std::string out = "toonbench report\n\n";
  out += "1-S = one-shot accuracy, Fin = final accuracy, Tok = prompt + completion tokens.\n";
  out += "Efficiency = final accuracy as a fraction (1.0 = 100%) per 1000 tokens, with every\n";
  out += "case of a group weighted equally.\n";
  out += "Groups:";
  for (const auto& [name, members] : report.grouping.groups) {
    out += " " + name + " (";
    for (size_t i = 0; i < members.size(); ++i) out += (i ? ", " : "") + members[i];
    out += ")";
  }
  out += "\n\n";
  out += "Average results by model (mean of run-level values)\n\n";
  out += TrackTable("Model", report.by_model);
  out += "\nAverage results by case (mean over all models and runs)\n\n";
  out += TrackTable("Case", report.by_case);
  out += "\nAccuracy by scenario group (cases weighted equally)\n\n";
  {
    std::vector<std::string> header = {"Group", "Metric"};
    for (Track t : kAllTracks) header.emplace_back(TrackName(t));
    std::vector<std::vector<std::string>> body;
    for (const AggregateRow& row : report.by_scenario) {
      for (int metric = 0; metric < 3; ++metric) {
        std::vector<std::string> cells = {
            metric == 0 ? row.label : "",
            metric == 0 ? "1-Shot Acc" : metric == 1 ? "Final Acc" : "Tokens/case"};
        for (Track t : kAllTracks) {
          auto it = row.tracks.find(t);
          if (it == row.tracks.end()) {
            cells.emplace_back("-");
          } else if (metric == 0) {
            cells.push_back(FormatPercent(it->second.one_shot));
          } else if (metric == 1) {
            cells.push_back(FormatPercent(it->second.final));
          } else {
            cells.push_back(FormatTokens(it->second.tokens));
          }
        }
        body.push_back(std::move(cells));
      }
    }
    out += RenderTable(header, body);
  }
  for (const auto& [group, members] : report.grouping.groups) {
    out += "\nEfficiency by model, group " + group + " (final accuracy per 1000 tokens)\n\n";
    std::vector<std::string> header = {"Model"};
    for (Track t : kAllTracks) header.emplace_back(TrackName(t));
    std::map<std::string, std::map<Track, double>> table;
    for (const EfficiencyPoint& p : report.efficiency) {
      if (p.group == group) table[p.model][p.track] = p.efficiency;
    }
    std::vector<std::vector<std::string>> body;
    for (const auto& [model, tracks] : table) {
      std::vector<std::string> cells = {model};
      for (Track t : kAllTracks) {
        auto it = tracks.find(t);
        cells.push_back(it == tracks.end() ? "-" : Fixed(it->second, 3));
      }
      body.push_back(std::move(cells));
    }
    out += RenderTable(header, body);
  }
  return out;
}

std::string FormatEfficiencyTsv(const Report& report, const std::string& group) {
  std::string out = "model\ttrack\tgroup\tefficiency\n";
  for (const EfficiencyPoint& p : report.efficiency) {
    if (p.group != group) continue;
    out += p.model + '\t' + std::string(TrackName(p.track)) + '\t' + p.group + '\t' +
           Fixed(p.efficiency, 6) + '\n';
  }
  return out;
}

std::string RenderEfficiencySvg(const Report& report, const std::string& group) {
  std::vector<std::string> models;
  std::map<std::string, std::map<Track, double>> values;
  double max_value = 0;
  for (const EfficiencyPoint& p : report.efficiency) {
    if (p.group != group) continue;
    if (values.find(p.model) == values.end()) models.push_back(p.model);
    values[p.model][p.track] = p.efficiency;
    max_value = std::max(max_value, p.efficiency);
  }
  double step = 0.05;
  for (double s : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    step = s;
    if (max_value / s <= 8) break;
  }
  int ticks = std::max(1, static_cast<int>(std::ceil(max_value / step - 1e-9)));
  double top = ticks * step;

  const int left = 70, right = 20, top_margin = 50, plot_h = 300, bottom = 190;
  const int slot = 54, bar = 14;
  int plot_w = std::max<int>(1, static_cast<int>(models.size())) * slot;
  int width = left + plot_w + right;
  int height = top_margin + plot_h + bottom;
  const char* colors[] = {"#4e79a7", "#f28e2b", "#59a14f"};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + std::to_string(width / 2) +
         "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">Efficiency by model, group " +
         XmlEscape(group) + "</text>\n";
  svg += "<text x=\"15\" y=\"" + std::to_string(top_margin + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
         std::to_string(top_margin + plot_h / 2) +
         ")\">final accuracy per 1000 tokens</text>\n";
  for (int i = 0; i <= ticks; ++i) {
    double y = top_margin + plot_h - plot_h * (i * step) / top;
    std::string ys = Fixed(y, 1);
    svg += "<line x1=\"" + std::to_string(left) + "\" y1=\"" + ys + "\" x2=\"" +
           std::to_string(left + plot_w) + "\" y2=\"" + ys + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + std::to_string(left - 6) + "\" y=\"" + Fixed(y + 4, 1) +
           "\" text-anchor=\"end\">" + Fixed(i * step, 2) + "</text>\n";
  }
  svg += "<line x1=\"" + std::to_string(left) + "\" y1=\"" + std::to_string(top_margin) +
         "\" x2=\"" + std::to_string(left) + "\" y2=\"" + std::to_string(top_margin + plot_h) +
         "\" stroke=\"black\"/>\n";
  for (size_t m = 0; m < models.size(); ++m) {
    int x0 = left + static_cast<int>(m) * slot + (slot - 3 * bar) / 2;
    for (int t = 0; t < 3; ++t) {
      auto it = values[models[m]].find(kAllTracks[t]);
      if (it == values[models[m]].end()) continue;
      double h = plot_h * it->second / top;
      svg += "<rect x=\"" + std::to_string(x0 + t * bar) + "\" y=\"" +
             Fixed(top_margin + plot_h - h, 1) + "\" width=\"" + std::to_string(bar - 1) +
             "\" height=\"" + Fixed(h, 1) + "\" fill=\"" + colors[t] + "\"><title>" +
             XmlEscape(models[m]) + " " + std::string(TrackName(kAllTracks[t])) + ": " +
             Fixed(it->second, 3) + "</title></rect>\n";
    }
    int lx = left + static_cast<int>(m) * slot + slot / 2;
    int ly = top_margin + plot_h + 12;
    svg += "<text x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(ly) +
           "\" text-anchor=\"end\" transform=\"rotate(-45 " + std::to_string(lx) + " " +
           std::to_string(ly) + ")\">" + XmlEscape(models[m]) + "</text>\n";
  }
  svg += "<line x1=\"" + std::to_string(left) + "\" y1=\"" + std::to_string(top_margin + plot_h) +
         "\" x2=\"" + std::to_string(left + plot_w) + "\" y2=\"" +
         std::to_string(top_margin + plot_h) + "\" stroke=\"black\"/>\n";
  for (int t = 0; t < 3; ++t) {
    int x = left + t * 70;
    svg += "<rect x=\"" + std::to_string(x) + "\" y=\"30\" width=\"10\" height=\"10\" fill=\"" +
           colors[t] + "\"/>\n";
    svg += "<text x=\"" + std::to_string(x + 14) + "\" y=\"39\">" +
           std::string(TrackName(kAllTracks[t])) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> EmitReport(const Report& report,
                                              const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::string& name, const std::string& text) {
    std::filesystem::path path = out_dir / name;
    WriteFile(path, text);
    written.push_back(path);
  };
  write("report.txt", FormatReportText(report));
  for (const auto& [group, members] : report.grouping.groups) {
    write("efficiency_" + group + ".tsv", FormatEfficiencyTsv(report, group));
    write("efficiency_" + group + ".svg", RenderEfficiencySvg(report, group));
  }
  return written;
}

}  // namespace toonbench
