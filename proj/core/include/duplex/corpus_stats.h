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

#ifndef DUPLEX_CORPUS_STATS_H_
#define DUPLEX_CORPUS_STATS_H_

#include <array>
#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "duplex/correlation_report.h"
#include "duplex/corpus_io.h"

namespace duplex {

struct DurationStats {
  int count = 0;
  double mean_ms = 0.0;
  double std_ms = 0.0;
  double se_ms = 0.0;  // standard error of the mean
};

struct CorpusStats {
  int dialogues = 0;
  std::int64_t frames = 0;  // per channel
  // Pooled over all dialogues; clipped IPUs excluded.
  std::array<DurationStats, kEventKinds> events;
  DurationStats gaps;
  DurationStats overlaps;
  std::int64_t voiced_frames = 0;   // summed over both channels
  std::int64_t overlap_frames = 0;  // both channels non-silent
  // Flattened dedup length over the tagged full-rate length at chunk_ms.
  int chunk_ms = 0;
  double compression_ratio = 0.0;
  double dedup_tokens_per_second = 0.0;
};

// Throws Error(kEmptyCorpus) on an empty corpus.
CorpusStats ComputeCorpusStats(const std::vector<Dialogue>& corpus,
                               int chunk_ms,
                               const EventExtraction& options = {});

nlohmann::ordered_json ToJson(const CorpusStats& stats);

}  // namespace duplex

#endif  // DUPLEX_CORPUS_STATS_H_
