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

#include "duplex/vad.h"

#include <string>

#include "duplex/errors.h"

namespace duplex {

std::vector<VadSegment> Vad(const TokenStream& stream, const Vocab& vocab,
                            const VadOptions& options) {
  const int f = vocab.frame_ms;
  for (int v : {options.min_voiced_ms, options.bridge_ms}) {
    if (v < 0 || v % f != 0) {
      throw Error(ErrorCode::kInvalidConfig,
                  "VAD threshold " + std::to_string(v) +
                      " ms is not a multiple of the frame");
    }
  }

  std::vector<VadSegment> runs;
  const int n = static_cast<int>(stream.tokens.size());
  for (int i = 0; i < n;) {
    if (vocab.is_silence(stream.tokens[static_cast<std::size_t>(i)])) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && !vocab.is_silence(stream.tokens[static_cast<std::size_t>(j)])) {
      ++j;
    }
    VadSegment seg{stream.speaker, i * f, j * f};
    if (!runs.empty() && seg.start_ms - runs.back().end_ms < options.bridge_ms) {
      runs.back().end_ms = seg.end_ms;
    } else {
      runs.push_back(seg);
    }
    i = j;
  }

  std::vector<VadSegment> out;
  for (const auto& seg : runs) {
    if (seg.duration_ms() >= options.min_voiced_ms) out.push_back(seg);
  }
  return out;
}

}  // namespace duplex
