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

#include "duplex/turn_events.h"

#include <algorithm>
#include <array>
#include <tuple>

namespace duplex {

std::string_view EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kIpu: return "ipu";
    case EventKind::kPause: return "pause";
    case EventKind::kFto: return "fto";
  }
  return "unknown";
}

std::vector<VadSegment> MergeSegments(std::span<const VadSegment> segments,
                                      int gap_ms) {
  std::vector<VadSegment> sorted(segments.begin(), segments.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const VadSegment& a, const VadSegment& b) {
              return std::tie(a.start_ms, a.end_ms) <
                     std::tie(b.start_ms, b.end_ms);
            });
  std::vector<VadSegment> out;
  for (const auto& seg : sorted) {
    if (seg.end_ms <= seg.start_ms) continue;
    if (!out.empty() && seg.start_ms - out.back().end_ms < gap_ms) {
      out.back().end_ms = std::max(out.back().end_ms, seg.end_ms);
    } else {
      out.push_back(seg);
    }
  }
  return out;
}

namespace {

// Both lookups rely on merged IPUs being sorted and pairwise disjoint.
bool Overlaps(const std::vector<VadSegment>& ipus, int begin, int end) {
  const auto it = std::upper_bound(
      ipus.begin(), ipus.end(), begin,
      [](int t, const VadSegment& s) { return t < s.end_ms; });
  return it != ipus.end() && it->start_ms < end;
}

// A strictly smaller or shifted interval inside one IPU of the other
// channel; identical intervals are not containment.
bool Contained(const VadSegment& seg, const std::vector<VadSegment>& other) {
  auto it = std::upper_bound(
      other.begin(), other.end(), seg.start_ms,
      [](int t, const VadSegment& o) { return t < o.start_ms; });
  if (it == other.begin()) return false;
  const auto& o = *--it;
  return seg.end_ms <= o.end_ms &&
         !(o.start_ms == seg.start_ms && o.end_ms == seg.end_ms);
}

}  // namespace

std::vector<EventRecord> TurnEvents(std::span<const VadSegment> seg0,
                                    std::span<const VadSegment> seg1,
                                    const TurnEventOptions& options) {
  std::array<std::vector<VadSegment>, 2> ipus = {
      MergeSegments(seg0, options.ipu_gap_ms),
      MergeSegments(seg1, options.ipu_gap_ms)};
  for (int ch = 0; ch < 2; ++ch) {
    for (auto& s : ipus[ch]) s.channel = ch;
  }

  std::vector<EventRecord> events;
  for (int ch = 0; ch < 2; ++ch) {
    const auto& own = ipus[ch];
    const auto& other = ipus[1 - ch];
    for (std::size_t i = 0; i < own.size(); ++i) {
      const auto& s = own[i];
      const bool clipped =
          s.start_ms <= 0 ||
          (options.horizon_ms >= 0 && s.end_ms >= options.horizon_ms);
      events.push_back(
          {EventKind::kIpu, s.duration_ms(), ch, s.start_ms, clipped});
      if (i + 1 < own.size()) {
        const int gap_begin = s.end_ms;
        const int gap_end = own[i + 1].start_ms;
        if (!Overlaps(other, gap_begin, gap_end)) {
          events.push_back({EventKind::kPause, gap_end - gap_begin, ch,
                            gap_begin, false});
        }
      }
    }
  }

  std::vector<VadSegment> floor;
  for (int ch = 0; ch < 2; ++ch) {
    for (const auto& s : ipus[ch]) {
      if (!options.backchannels_hold_no_floor || !Contained(s, ipus[1 - ch])) {
        floor.push_back(s);
      }
    }
  }
  std::sort(floor.begin(), floor.end(),
            [](const VadSegment& a, const VadSegment& b) {
              return std::tie(a.start_ms, a.channel) <
                     std::tie(b.start_ms, b.channel);
            });
  for (std::size_t i = 1; i < floor.size(); ++i) {
    const auto& prev = floor[i - 1];
    const auto& next = floor[i];
    if (next.channel != prev.channel) {
      events.push_back({EventKind::kFto, next.start_ms - prev.end_ms,
                        next.channel, next.start_ms, false});
    }
  }

  std::sort(events.begin(), events.end(),
            [](const EventRecord& a, const EventRecord& b) {
              return std::tie(a.kind, a.start_ms, a.channel) <
                     std::tie(b.kind, b.start_ms, b.channel);
            });
  return events;
}

}  // namespace duplex
