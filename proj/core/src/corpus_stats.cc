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

#include "duplex/corpus_stats.h"

#include <nlohmann/json.hpp>

#include "duplex/errors.h"
#include "duplex/stats.h"
#include "duplex/tokens.h"

namespace duplex {
namespace {

DurationStats Describe(const std::vector<double>& xs) {
  DurationStats s;
  s.count = static_cast<int>(xs.size());
  s.mean_ms = Mean(xs);
  s.std_ms = SampleStd(xs);
  s.se_ms = StandardError(xs);
  return s;
}

nlohmann::ordered_json DescribeJson(const DurationStats& s) {
  return {{"count", s.count},
          {"mean_ms", s.mean_ms},
          {"std_ms", s.std_ms},
          {"se_ms", s.se_ms}};
}

}  // namespace

CorpusStats ComputeCorpusStats(const std::vector<Dialogue>& corpus,
                               int chunk_ms, const EventExtraction& options) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "corpus is empty");
  CorpusStats stats;
  stats.dialogues = static_cast<int>(corpus.size());
  stats.chunk_ms = chunk_ms;

  std::array<std::vector<double>, kEventKinds> values;
  std::vector<double> gaps, overlaps;
  std::size_t flat = 0, raw = 0;
  double seconds = 0.0;
  for (const auto& d : corpus) {
    stats.frames += d.frames();
    const auto& a = d.channels[0].tokens;
    const auto& b = d.channels[1].tokens;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const bool va = !d.vocab.is_silence(a[i]);
      const bool vb = !d.vocab.is_silence(b[i]);
      stats.voiced_frames += va + vb;
      stats.overlap_frames += va && vb;
    }
    for (const auto& e : ExtractEvents(d, options)) {
      if (e.kind == EventKind::kIpu && e.clipped) continue;
      values[static_cast<int>(e.kind)].push_back(e.duration_ms);
      if (e.kind == EventKind::kFto && e.duration_ms > 0) {
        gaps.push_back(e.duration_ms);
      }
      if (e.kind == EventKind::kFto && e.duration_ms < 0) {
        overlaps.push_back(e.duration_ms);
      }
    }
    const auto chunked =
        ChunkStreams(d.channels[0], d.channels[1], d.vocab, chunk_ms);
    raw += chunked.raw_interleaved_length();
    flat += Flatten(Deduplicate(chunked)).size();
    seconds += static_cast<double>(chunked.chunks.size()) * chunk_ms / 1000.0;
  }
  for (int k = 0; k < kEventKinds; ++k) stats.events[k] = Describe(values[k]);
  stats.gaps = Describe(gaps);
  stats.overlaps = Describe(overlaps);
  if (raw > 0) {
    stats.compression_ratio =
        static_cast<double>(flat) / static_cast<double>(raw);
  }
  if (seconds > 0) stats.dedup_tokens_per_second = flat / seconds;
  return stats;
}

nlohmann::ordered_json ToJson(const CorpusStats& stats) {
  nlohmann::ordered_json j;
  j["dialogues"] = stats.dialogues;
  j["frames"] = stats.frames;
  nlohmann::ordered_json events = nlohmann::ordered_json::object();
  for (int k = 0; k < kEventKinds; ++k) {
    events[std::string(EventKindName(static_cast<EventKind>(k)))] =
        DescribeJson(stats.events[k]);
  }
  j["events"] = std::move(events);
  j["gaps"] = DescribeJson(stats.gaps);
  j["overlaps"] = DescribeJson(stats.overlaps);
  j["voiced_frames"] = stats.voiced_frames;
  j["overlap_frames"] = stats.overlap_frames;
  j["chunk_ms"] = stats.chunk_ms;
  j["compression_ratio"] = stats.compression_ratio;
  j["dedup_tokens_per_second"] = stats.dedup_tokens_per_second;
  return j;
}

}  // namespace duplex
