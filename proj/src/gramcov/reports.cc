// Copyright 2026 The Gramcov Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gramcov/reports.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>

namespace gramcov {
namespace {

// First column left-aligned, the others right-aligned.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string pad(widths[i] - row[i].size(), ' ');
      if (i > 0) line += "  ";
      line += i == 0 ? row[i] + pad : pad + row[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

double ms(double seconds) { return static_cast<double>(static_cast<long long>(seconds * 1000.0 + 0.5)) / 1000.0; }

Json disjunct_json(const DisjunctTable& table, int id) {
  Json out = {{"id", disjunct_name(id)}};
  if (!table.contains(id)) return out;
  const DisjunctEntry& entry = table.at(id);
  out["rule"] = entry.rule;
  out["span"] = entry.span.to_string();
  out["description"] = entry.description;
  out["comment"] = entry.comment;
  return out;
}

std::string disjunct_line(const DisjunctTable& table, int id) {
  std::string line = disjunct_name(id);
  if (!table.contains(id)) return line;
  const DisjunctEntry& entry = table.at(id);
  line += "  " + entry.span.to_string() + "  " + entry.description;
  if (!entry.comment.empty()) line += "  \"" + entry.comment + "\"";
  return line;
}

Json with_provenance(Json body, const Provenance& provenance) {
  Json out = {{"provenance", provenance_to_json(provenance)}};
  for (auto& [key, value] : body.items()) out[key] = value;
  return out;
}

Json stats_json(const GrammarStats& stats) {
  return {{"rules", stats.n_rules},
          {"arcs", stats.n_arcs},
          {"disjuncts", stats.n_disjuncts},
          {"constraints", stats.n_constraints},
          {"disjunctions", stats.n_disjunctions}};
}

}  // namespace

Json ratio_json(const Ratio& ratio) {
  return {{"numerator", ratio.numerator},
          {"denominator", ratio.denominator},
          {"display", ratio.display()}};
}

std::string format_seconds(double seconds) { return format_fixed(seconds, 1); }

std::string format_factor(double factor) { return "factor " + format_fixed(factor, 1); }

Json coverage_json(const CoverageReport& report, const DisjunctTable& table,
                   const Provenance& provenance) {
  Json body = {{"report", "coverage"},
               {"items", report.items},
               {"parseable", report.parseable},
               {"parseable_ungrammatical", report.parseable_ungrammatical},
               {"includes_ungrammatical", report.includes_ungrammatical},
               {"t_con", ratio_json(report.t_con)},
               {"t_dis", ratio_json(report.t_dis)}};
  if (report.t_int) {
    Json t_int = ratio_json(report.t_int->ratio);
    t_int["applicable"] = report.t_int->ratio.defined();
    t_int["denominator_exact"] = report.t_int->exact;
    t_int["recursion_bound"] = report.t_int->recursion_bound;
    t_int["cap"] = report.t_int->cap;
    body["t_int"] = t_int;
  }
  body["exercised"] = Json::array();
  for (int id : report.exercised) body["exercised"].push_back(disjunct_name(id));
  body["unexercised"] = Json::array();
  for (int id : report.unexercised) body["unexercised"].push_back(disjunct_json(table, id));
  return with_provenance(body, provenance);
}

std::string coverage_text(const CoverageReport& report, const DisjunctTable& table) {
  std::string out;
  auto line = [&](const std::string& name, const Ratio& r) {
    out += name + " = " + r.display() + "  (" + std::to_string(r.numerator) + "/" +
           std::to_string(r.denominator) + ")\n";
  };
  out += "items " + std::to_string(report.items) + ", parseable " +
         std::to_string(report.parseable) + " (" +
         std::to_string(report.parseable_ungrammatical) + " ungrammatical, " +
         (report.includes_ungrammatical ? "counted" : "not counted") + ")\n";
  line("T_con", report.t_con);
  line("T_dis", report.t_dis);
  if (report.t_int) {
    if (report.t_int->ratio.defined()) {
      line("T_int", report.t_int->ratio);
    } else {
      out += "T_int = n/a  (no bounded derivation)\n";
    }
    if (!report.t_int->exact) out += "  denominator truncated at the cap; estimate only\n";
  }
  if (!report.unexercised.empty()) {
    out += "\nunexercised disjuncts:\n";
    for (int id : report.unexercised) out += "  " + disjunct_line(table, id) + "\n";
  }
  return out;
}

Json completeness_json(const CompletenessReport& report, const DisjunctTable& table,
                       const Provenance& provenance) {
  Json gaps = Json::array();
  for (const Gap& gap : report.gaps) {
    Json g = disjunct_json(table, gap.id);
    g["candidate"] = gap.candidate == Gap::Candidate::kUntested ? "i" : "ii";
    g["reason"] = gap.reason;
    gaps.push_back(g);
  }
  Json body = {{"report", "completeness"},
               {"complete", report.complete()},
               {"table_size", report.table_size},
               {"gaps", gaps},
               {"unparsed_grammatical", report.unparsed_grammatical}};
  return with_provenance(body, provenance);
}

std::string completeness_text(const CompletenessReport& report, const DisjunctTable& table) {
  std::string out;
  if (report.complete()) {
    out += "suite is complete w.r.t. this grammar (" + std::to_string(report.table_size) +
           " disjuncts exercised)\n";
  } else {
    out += std::to_string(report.gaps.size()) + " of " + std::to_string(report.table_size) +
           " disjuncts unexercised\n";
    out += "(i) appropriate but untested, (ii) possibly inappropriate; review each\n\n";
    for (const Gap& gap : report.gaps) {
      out += gap.candidate == Gap::Candidate::kUntested ? "(i)  " : "(ii) ";
      out += disjunct_line(table, gap.id) + "\n";
      if (!gap.reason.empty()) out += "       " + gap.reason + "\n";
    }
  }
  if (!report.unparsed_grammatical.empty()) {
    out += "\n" + std::to_string(report.unparsed_grammatical.size()) +
           " grammatical item(s) without a parse are not taken into account\n";
  }
  return out;
}

Json equivalence_json(const EquivalenceReport& equivalence, const EquivalenceReport& strict,
                      const Provenance& provenance) {
  auto classes = [](const EquivalenceReport& r) {
    Json out = Json::array();
    for (const EquivalenceClass& c : r.classes) {
      out.push_back({{"representative", c.representative}, {"members", c.members}});
    }
    return out;
  };
  Json body = {{"report", "equivalence"},
               {"equivalence_classes", classes(equivalence)},
               {"strict_classes", classes(strict)},
               {"strict_refines_equivalence", refines(strict, equivalence)}};
  return with_provenance(body, provenance);
}

Json reduction_json(const ReductionReport& report, const Provenance& provenance) {
  Json body = {{"report", "reduction"},
               {"mode", report.mode},
               {"original_count", report.original_count},
               {"reduced_count", report.reduced_count},
               {"relative_size", report.relative_size()},
               {"kept", report.kept},
               {"timing",
                {{"original_runtime_s", ms(report.original_runtime_s)},
                 {"reduced_runtime_s", ms(report.reduced_runtime_s)},
                 {"relative_runtime", report.relative_runtime()}}}};
  return with_provenance(body, provenance);
}

std::vector<ReductionTableRow> reduction_rows(const ReductionReport& report,
                                              const std::string& original_label,
                                              const std::string& reduced_label) {
  return {{original_label, report.original_count, "100%", report.original_runtime_s, "100%"},
          {reduced_label, report.reduced_count, report.relative_size(), report.reduced_runtime_s,
           report.relative_runtime()}};
}

std::string reduction_table(const std::vector<ReductionTableRow>& rows) {
  std::vector<std::vector<std::string>> cells = {
      {"", "test cases", "relative size", "runtime", "relative runtime"}};
  for (const ReductionTableRow& row : rows) {
    cells.push_back({row.label, std::to_string(row.count), row.relative_size,
                     row.runtime_s ? format_seconds(*row.runtime_s) + " s" : "",
                     row.relative_runtime});
  }
  return render_table(cells);
}

namespace {

std::map<std::string, const UsageRow*> rows_by_id(const UsageMatrix& matrix) {
  std::map<std::string, const UsageRow*> out;
  for (const UsageRow& row : matrix.rows) out[row.id] = &row;
  return out;
}

}  // namespace

Json suspects_json(const SuspectReport& report, const UsageMatrix& matrix,
                   const DisjunctTable& table, const Provenance& provenance) {
  auto rows = rows_by_id(matrix);
  Json suspects = Json::array();
  for (const Suspect& s : report.suspects) {
    Json entry = disjunct_json(table, s.id);
    entry["u"] = s.u;
    entry["g"] = s.g;
    entry["p_u"] = ratio_json(s.p_u);
    entry["p_g"] = ratio_json(s.p_g);
    entry["score"] = ratio_json(s.score);
    entry["flagged"] = s.flagged;
    Json sentences = Json::array();
    for (const std::string& id : s.sentences) {
      sentences.push_back({{"id", id}, {"text", rows.count(id) ? rows[id]->text : ""}});
    }
    entry["sentences"] = sentences;
    suspects.push_back(entry);
  }
  Json body = {{"report", "suspects"},
               {"parseable_ungrammatical", report.parseable_ungrammatical},
               {"parseable_grammatical", report.parseable_grammatical},
               {"flagged", std::count_if(report.suspects.begin(), report.suspects.end(),
                                         [](const Suspect& s) { return s.flagged; })},
               {"suspects", suspects},
               {"note", report.note}};
  return with_provenance(body, provenance);
}

std::string suspects_text(const SuspectReport& report, const UsageMatrix& matrix,
                          const DisjunctTable& table) {
  if (!report.note.empty()) return report.note + "\n";
  auto rows = rows_by_id(matrix);
  std::string out = std::to_string(report.parseable_ungrammatical) +
                    " parseable ungrammatical, " + std::to_string(report.parseable_grammatical) +
                    " parseable grammatical items\n\n";
  for (std::size_t rank = 0; rank < report.suspects.size(); ++rank) {
    const Suspect& s = report.suspects[rank];
    out += std::to_string(rank + 1) + ". " + disjunct_line(table, s.id) + "\n";
    out += "   score " + s.score.display() + "  u=" + std::to_string(s.u) +
           " g=" + std::to_string(s.g) + (s.flagged ? "  suspicious" : "") + "\n";
    out += "   sentences relying on this disjunct:\n";
    for (const std::string& id : s.sentences) {
      out += "     " + id + "  " + (rows.count(id) ? rows[id]->text : "") + "\n";
    }
  }
  return out;
}

std::string size_table(const std::vector<SizeRow>& rows) {
  std::vector<std::vector<std::string>> cells = {{"grammar", "rules", "arcs", "disjuncts"}};
  for (const SizeRow& row : rows) {
    if (row.stats) {
      cells.push_back({row.label, std::to_string(row.stats->n_rules),
                       std::to_string(row.stats->n_arcs), std::to_string(row.stats->n_disjuncts)});
    } else {
      cells.push_back({row.label, "", "", ""});
    }
  }
  return render_table(cells);
}

Json comparison_json(const RunComparison& comparison, const GrammarStats& base_stats,
                     const GrammarStats& reduced_stats, int kept, const Provenance& provenance) {
  auto run = [](const RunTiming& t, const GrammarStats& stats) {
    return Json{{"size", stats_json(stats)},
                {"parsed", t.parsed},
                {"avg_solutions", std::round(t.avg_solutions * 1000.0) / 1000.0}};
  };
  auto timing = [](const RunTiming& t) {
    return Json{{"total_s", ms(t.total_s)}, {"avg_s", ms(t.avg_s)}, {"max_s", ms(t.max_s)}};
  };
  Json body = {{"report", "specialization"},
               {"items", comparison.items},
               {"kept_disjuncts", kept},
               {"base", run(comparison.base, base_stats)},
               {"reduced", run(comparison.reduced, reduced_stats)},
               {"mismatches", comparison.mismatches},
               {"additions", comparison.additions},
               {"lost", comparison.lost},
               {"timing",
                {{"base", timing(comparison.base)},
                 {"reduced", timing(comparison.reduced)},
                 {"speedup", std::round(comparison.speedup() * 100.0) / 100.0}}}};
  return with_provenance(body, provenance);
}

std::string comparison_text(const RunComparison& comparison, const GrammarStats& base_stats,
                            const GrammarStats& reduced_stats) {
  std::string out = size_table({{"base grammar", base_stats}, {"reduced grammar", reduced_stats}});
  out += "\n";
  std::vector<std::vector<std::string>> cells = {{"grammar", "coverage", "mismatches",
                                                  "additions", "total s", "avg s", "max s",
                                                  "solutions"}};
  auto row = [&](const std::string& label, const RunTiming& t, bool reduced) {
    cells.push_back({label, percent_truncated(t.parsed, comparison.items),
                     reduced ? std::to_string(comparison.mismatches.size()) : "",
                     reduced ? std::to_string(comparison.additions.size()) : "",
                     format_seconds(t.total_s), format_fixed(t.avg_s, 3),
                     format_fixed(t.max_s, 3), format_fixed(t.avg_solutions, 1)});
  };
  row("base grammar", comparison.base, false);
  row("reduced grammar", comparison.reduced, true);
  out += render_table(cells);
  out += "\nreduced grammar speedup: " + format_factor(comparison.speedup()) + "\n";
  return out;
}

Json staged_json(const StagedGrammar& staged, const std::vector<StagedRecord>& records,
                 const std::vector<ParseRecord>& base, const Provenance& provenance) {
  Json stages = Json::array();
  std::array<int, 3> resolved = {0, 0, 0};
  double total = 0.0;
  for (const StagedRecord& r : records) {
    if (r.record.parseable()) ++resolved[r.stage - 1];
    total += r.record.elapsed;
  }
  for (int s = 0; s < 3; ++s) {
    const Stage& stage = staged.stages[s];
    stages.push_back({{"stage", s + 1},
                      {"disjuncts", stage.kept.size()},
                      {"size", stats_json(grammar_stats(stage.grammar))},
                      {"skipped", stage.skipped},
                      {"parsed_items", resolved[s]}});
  }
  Json items = Json::array();
  std::vector<std::string> differ;
  for (std::size_t i = 0; i < records.size(); ++i) {
    items.push_back({{"id", records[i].record.id},
                     {"status", status_name(records[i].record.status)},
                     {"stage", records[i].stage}});
    if (i < base.size() && base[i].parseable() != records[i].record.parseable()) {
      differ.push_back(records[i].record.id);
    }
  }
  double base_total = 0.0;
  for (const ParseRecord& r : base) base_total += r.elapsed;
  Json body = {{"report", "staged"},
               {"threshold", staged.threshold},
               {"warnings", staged.warnings},
               {"stages", stages},
               {"items", items},
               {"coverage_differs_from_base", differ},
               {"timing", {{"staged_total_s", ms(total)}, {"base_total_s", ms(base_total)}}}};
  return with_provenance(body, provenance);
}

}  // namespace gramcov
