// Copyright 2026 The Duplex Authors
//
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

#include "duplex/correlation_report.h"

#include <cstdio>
#include <map>

#include <nlohmann/json.hpp>

#include "duplex/errors.h"
#include "duplex/stats.h"

namespace duplex {

using nlohmann::ordered_json;

std::vector<EventRecord> ExtractEvents(const Dialogue& dialogue,
                                       const EventExtraction& options) {
  const auto seg0 = Vad(dialogue.channels[0], dialogue.vocab, options.vad);
  const auto seg1 = Vad(dialogue.channels[1], dialogue.vocab, options.vad);
  TurnEventOptions turns = options.turns;
  turns.horizon_ms = dialogue.frames() * dialogue.vocab.frame_ms;
  return TurnEvents(seg0, seg1, turns);
}

EventSummary Summarize(std::span<const EventRecord> events) {
  std::array<std::vector<double>, kEventKinds> values;
  std::vector<double> gaps, overlaps;
  for (const auto& e : events) {
    if (e.kind == EventKind::kIpu && e.clipped) continue;
    values[static_cast<int>(e.kind)].push_back(e.duration_ms);
    if (e.kind == EventKind::kFto) {
      if (e.duration_ms > 0) gaps.push_back(e.duration_ms);
      if (e.duration_ms < 0) overlaps.push_back(e.duration_ms);
    }
  }
  EventSummary s;
  for (int k = 0; k < kEventKinds; ++k) {
    s.count[k] = static_cast<int>(values[k].size());
    if (!values[k].empty()) s.mean_ms[k] = Mean(values[k]);
  }
  s.gaps = static_cast<int>(gaps.size());
  s.overlaps = static_cast<int>(overlaps.size());
  if (!gaps.empty()) s.gap_mean_ms = Mean(gaps);
  if (!overlaps.empty()) s.overlap_mean_ms = Mean(overlaps);
  return s;
}

CorrelationReport BuildCorrelationReport(const std::vector<Dialogue>& generated,
                                         const std::vector<Dialogue>& reference,
                                         const EventExtraction& options) {
  std::map<std::string, const Dialogue*> by_id;
  for (const auto& d : reference) by_id.emplace(d.id, &d);

  CorrelationReport report;
  for (const auto& g : generated) {
    auto it = by_id.find(g.id);
    if (it == by_id.end()) {
      report.unpaired_ids.push_back(g.id);
      continue;
    }
    report.pair_ids.push_back(g.id);
    report.generated.push_back(Summarize(ExtractEvents(g, options)));
    report.reference.push_back(Summarize(ExtractEvents(*it->second, options)));
  }
  report.paired_dialogues = static_cast<int>(report.pair_ids.size());
  if (report.paired_dialogues == 0) {
    throw Error(ErrorCode::kNoPairs,
                "no dialogue ids are shared between the two corpora");
  }

  std::vector<double> defined;
  for (int k = 0; k < kEventKinds; ++k) {
    std::vector<double> xs, ys;
    auto& kc = report.kinds[k];
    for (std::size_t i = 0; i < report.generated.size(); ++i) {
      const auto& a = report.generated[i].mean_ms[k];
      const auto& b = report.reference[i].mean_ms[k];
      if (a && b) {
        xs.push_back(*a);
        ys.push_back(*b);
      } else {
        ++kc.excluded;
      }
    }
    kc.pairs = static_cast<int>(xs.size());
    kc.generated_mean_ms = Mean(xs);
    kc.reference_mean_ms = Mean(ys);
    try {
      kc.r = Pearson(xs, ys);
      defined.push_back(*kc.r);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateInput) throw;
    }
  }
  if (!defined.empty()) report.average_r = Mean(defined);
  return report;
}

namespace {

std::string FormatR(const std::optional<double>& r) {
  if (!r) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *r);
  return buf;
}

ordered_json OptionalJson(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json SummaryJson(const EventSummary& s) {
  ordered_json j;
  for (int k = 0; k < kEventKinds; ++k) {
    const std::string name(EventKindName(static_cast<EventKind>(k)));
    j[name + "_mean_ms"] = OptionalJson(s.mean_ms[k]);
    j[name + "_count"] = s.count[k];
  }
  j["gap_mean_ms"] = OptionalJson(s.gap_mean_ms);
  j["gap_count"] = s.gaps;
  j["overlap_mean_ms"] = OptionalJson(s.overlap_mean_ms);
  j["overlap_count"] = s.overlaps;
  return j;
}

}  // namespace

std::string CorrelationCsvHeader() {
  return "model,dataset,ipu_r,pause_r,fto_r,average_r";
}

std::string CorrelationCsvRow(const std::string& model,
                              const std::string& dataset,
                              const CorrelationReport& report) {
  return model + "," + dataset + "," + FormatR(report.kinds[0].r) + "," +
         FormatR(report.kinds[1].r) + "," + FormatR(report.kinds[2].r) + "," +
         FormatR(report.average_r);
}

ordered_json ToJson(const CorrelationReport& report) {
  ordered_json j;
  ordered_json kinds = ordered_json::object();
  for (int k = 0; k < kEventKinds; ++k) {
    const auto& kc = report.kinds[k];
    kinds[std::string(EventKindName(static_cast<EventKind>(k)))] = {
        {"r", OptionalJson(kc.r)},
        {"pairs", kc.pairs},
        {"excluded", kc.excluded},
        {"generated_mean_ms", kc.generated_mean_ms},
        {"reference_mean_ms", kc.reference_mean_ms},
    };
  }
  j["kinds"] = std::move(kinds);
  j["average_r"] = OptionalJson(report.average_r);
  j["paired_dialogues"] = report.paired_dialogues;
  j["unpaired_ids"] = report.unpaired_ids;
  ordered_json dialogues = ordered_json::array();
  for (std::size_t i = 0; i < report.pair_ids.size(); ++i) {
    dialogues.push_back({{"id", report.pair_ids[i]},
                         {"generated", SummaryJson(report.generated[i])},
                         {"reference", SummaryJson(report.reference[i])}});
  }
  j["dialogues"] = std::move(dialogues);
  return j;
}

}  // namespace duplex
