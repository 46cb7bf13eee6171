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

#ifndef DUPLEX_TURN_EVENTS_H_
#define DUPLEX_TURN_EVENTS_H_

#include <span>
#include <string_view>
#include <vector>

#include "duplex/vad.h"

namespace duplex {

enum class EventKind { kIpu = 0, kPause = 1, kFto = 2 };
inline constexpr int kEventKinds = 3;

std::string_view EventKindName(EventKind kind);

struct EventRecord {
  EventKind kind = EventKind::kIpu;
  // Signed for kFto: negative is an overlap, positive a gap.
  int duration_ms = 0;
  // IPU/pause: the speaking channel. FTO: the channel taking the floor.
  int channel = 0;
  int start_ms = 0;
  // IPU touching the start of the recording or the horizon; its true
  // length is unknown.
  bool clipped = false;

  bool operator==(const EventRecord&) const = default;
};

struct TurnEventOptions {
  // Same-channel segments separated by less than this merge into one IPU.
  int ipu_gap_ms = 200;
  // End of the recording in ms, or negative when unknown. Only used to flag
  // clipped IPUs.
  int horizon_ms = -1;
  // When set, an IPU lying entirely inside an IPU of the other channel is a
  // backchannel and never takes the floor.
  bool backchannels_hold_no_floor = true;
};

// Extracts turn-taking events from two channels' voiced segments.
//
//   IPU    merged voiced stretch of one channel.
//   pause  silence between consecutive IPUs of one channel with no IPU of
//          the other channel overlapping it.
//   FTO    at each floor transfer, start of the incoming IPU minus end of
//          the previous floor-taking IPU.
//
// Floor-taking IPUs are visited in (start, channel) order; a transfer
// happens whenever the channel changes. Events are returned sorted by
// (kind, start_ms, channel).
std::vector<EventRecord> TurnEvents(std::span<const VadSegment> seg0,
                                    std::span<const VadSegment> seg1,
                                    const TurnEventOptions& options = {});

// Merges same-channel segments separated by less than gap_ms; input may be
// unsorted or overlapping.
std::vector<VadSegment> MergeSegments(std::span<const VadSegment> segments,
                                      int gap_ms);

}  // namespace duplex

#endif  // DUPLEX_TURN_EVENTS_H_
