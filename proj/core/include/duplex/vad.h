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

#ifndef DUPLEX_VAD_H_
#define DUPLEX_VAD_H_

#include <vector>

#include "duplex/tokens.h"

namespace duplex {

// Voiced interval [start_ms, end_ms) of one channel.
struct VadSegment {
  int channel = 0;
  int start_ms = 0;
  int end_ms = 0;

  int duration_ms() const { return end_ms - start_ms; }
  bool operator==(const VadSegment&) const = default;
};

struct VadOptions {
  // Voiced runs shorter than this are dropped (after bridging).
  int min_voiced_ms = 0;
  // Silences strictly shorter than this between two voiced runs are filled.
  int bridge_ms = 0;
};

// Token-level voice activity: maximal runs of non-silence frames. Both
// thresholds must be multiples of the frame (Error(kInvalidConfig)).
std::vector<VadSegment> Vad(const TokenStream& stream, const Vocab& vocab,
                            const VadOptions& options = {});

}  // namespace duplex

#endif  // DUPLEX_VAD_H_
