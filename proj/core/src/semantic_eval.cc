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

#include "duplex/semantic_eval.h"

#include <algorithm>

#include "duplex/errors.h"
#include "duplex/stats.h"

namespace duplex {

double DialoguePerplexity(const Predictor& model,
                          const ScoredDialogue& scored) {
  const auto& d = scored.dialogue;
  const int prompt = std::clamp(scored.prompt_chunks, 0,
                                static_cast<int>(d.chunks.size()));
  std::vector<Token> seq;
  for (int i = 0; i < prompt; ++i) AppendChunk(d.vocab, d.chunks[i], seq);
  const std::size_t begin = seq.size();
  for (std::size_t i = static_cast<std::size_t>(prompt); i < d.chunks.size();
       ++i) {
    AppendChunk(d.vocab, d.chunks[i], seq);
  }
  return Score(model, seq, begin).perplexity();
}

double MedianPerplexity(const Predictor& model,
                        std::span<const ScoredDialogue> dialogues,
                        std::vector<double>* per_dialogue) {
  if (dialogues.empty()) {
    throw Error(ErrorCode::kEmptySet, "no dialogues to score");
  }
  std::vector<double> values;
  values.reserve(dialogues.size());
  for (const auto& d : dialogues) values.push_back(DialoguePerplexity(model, d));
  if (per_dialogue != nullptr) *per_dialogue = values;
  return Median(values);
}

}  // namespace duplex
