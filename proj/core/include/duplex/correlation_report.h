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

#ifndef DUPLEX_CORRELATION_REPORT_H_
#define DUPLEX_CORRELATION_REPORT_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "duplex/corpus_io.h"
#include "duplex/turn_events.h"
#include "duplex/vad.h"

namespace duplex {

struct EventExtraction {
  VadOptions vad;
  TurnEventOptions turns;
};

// VAD on both channels then TurnEvents, with the horizon set to the
// dialogue length.
std::vector<EventRecord> ExtractEvents(const Dialogue& dialogue,
                                       const EventExtraction& options = {});

// Per-dialogue average durations. Clipped IPUs are left out. FTOs are
// averaged with their sign; gap and overlap means are kept separately.
struct EventSummary {
  std::array<std::optional<double>, kEventKinds> mean_ms;
  std::array<int, kEventKinds> count = {0, 0, 0};
  std::optional<double> gap_mean_ms;
  std::optional<double> overlap_mean_ms;
  int gaps = 0;
  int overlaps = 0;
};

EventSummary Summarize(std::span<const EventRecord> events);

struct KindCorrelation {
  std::optional<double> r;  // missing when undefined (degenerate input)
  int pairs = 0;            // dialogue pairs where both sides have the kind
  int excluded = 0;         // paired dialogues missing the kind on a side
  double generated_mean_ms = 0.0;
  double reference_mean_ms = 0.0;
};

struct CorrelationReport {
  std::array<KindCorrelation, kEventKinds> kinds;
  std::optional<double> average_r;  // mean of the defined per-kind r
  int paired_dialogues = 0;
  std::vector<std::string> unpaired_ids;
  std::vector<std::string> pair_ids;
  std::vector<EventSummary> generated;
  std::vector<EventSummary> reference;
};

// Pairs dialogues by id and correlates per-dialogue average durations for
// each event kind. Throws Error(kNoPairs) if no ids match.
CorrelationReport BuildCorrelationReport(const std::vector<Dialogue>& generated,
                                         const std::vector<Dialogue>& reference,
                                         const EventExtraction& options = {});

// CSV layout: model,dataset,ipu_r,pause_r,fto_r,average_r; missing values
// are empty fields.
std::string CorrelationCsvHeader();
std::string CorrelationCsvRow(const std::string& model,
                              const std::string& dataset,
                              const CorrelationReport& report);
nlohmann::ordered_json ToJson(const CorrelationReport& report);

}  // namespace duplex

#endif  // DUPLEX_CORRELATION_REPORT_H_
