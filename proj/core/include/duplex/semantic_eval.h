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

#ifndef DUPLEX_SEMANTIC_EVAL_H_
#define DUPLEX_SEMANTIC_EVAL_H_

#include <span>
#include <vector>

#include "duplex/predictor.h"
#include "duplex/tokens.h"

namespace duplex {

// A dialogue whose first `prompt_chunks` chunks are context only.
struct ScoredDialogue {
  DedupDialogue dialogue;
  int prompt_chunks = 0;
};

// Perplexity of the flattened continuation, conditioned on the prompt.
// Throws Error(kEmptySequence) if the continuation is empty.
double DialoguePerplexity(const Predictor& model,
                          const ScoredDialogue& dialogue);

// Throws Error(kEmptySet) on an empty list.
double MedianPerplexity(const Predictor& model,
                        std::span<const ScoredDialogue> dialogues,
                        std::vector<double>* per_dialogue = nullptr);

}  // namespace duplex

#endif  // DUPLEX_SEMANTIC_EVAL_H_
