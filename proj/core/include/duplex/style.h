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

#ifndef DUPLEX_STYLE_H_
#define DUPLEX_STYLE_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "duplex/tokens.h"

namespace duplex {

struct DurationDist {
  double mean_ms = 0.0;
  double std_ms = 0.0;
  bool operator==(const DurationDist&) const = default;
};

// Turn-taking and content knobs for the synthetic dialogue generator.
// The defaults are synthetic, not calibrated against any recorded corpus;
// they put deduplicated sequences at roughly half the raw token count.
struct DialogueStyle {
  Vocab vocab;

  DurationDist ipu{1500.0, 400.0};
  DurationDist pause{600.0, 120.0};
  // Signed: a negative mean gives overlapping floor transfers.
  DurationDist fto{200.0, 100.0};
  // Chance that the floor holder keeps the floor after an IPU.
  double turn_continue_prob = 0.4;

  double backchannel_prob = 0.15;
  DurationDist backchannel{280.0, 80.0};
  // Minimum silence kept between two voiced stretches of one channel when
  // placing backchannels and overlapping turn starts.
  int separation_ms = 240;

  // Content: per-speaker Markov chain over `content_units` unit ids. Each
  // unit repeats with p_self, otherwise moves to one of `content_branching`
  // successors. A turn-initial IPU opens with a fixed response to the
  // partner's last unit with probability response_prob.
  double p_self = 0.3;
  int content_units = 48;
  int content_branching = 3;
  double response_prob = 0.5;
  std::uint64_t content_seed = 1;

  // Throws Error(kInvalidConfig) on violated invariants.
  void Validate() const;
  bool operator==(const DialogueStyle&) const = default;
};

// Declarative key = value format, one pair per line, '#' starts a comment.
// Keys mirror the field names with _mean_ms / _std_ms suffixes for the
// duration distributions, e.g. `ipu_mean_ms = 1500`. `silence` takes a
// comma-separated list. Unknown keys are rejected.
DialogueStyle ParseStyle(std::istream& in);
DialogueStyle LoadStyleFile(const std::string& path);
std::string FormatStyle(const DialogueStyle& style);

}  // namespace duplex

#endif  // DUPLEX_STYLE_H_
