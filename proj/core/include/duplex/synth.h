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

#ifndef DUPLEX_SYNTH_H_
#define DUPLEX_SYNTH_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "duplex/corpus_io.h"
#include "duplex/style.h"
#include "duplex/tokens.h"

namespace duplex {

// Per-speaker Markov chains over a fixed subset of speech units, fully
// determined by style.content_seed so that corpora drawn with different
// dialogue seeds share one "language".
class ContentModel {
 public:
  explicit ContentModel(const DialogueStyle& style);

  const std::vector<Token>& units() const { return units_; }
  // Successors of unit index u for `speaker`, as (unit index, cumulative
  // probability) pairs.
  const std::vector<std::pair<int, double>>& successors(int speaker,
                                                        int u) const {
    return successors_[speaker][static_cast<std::size_t>(u)];
  }
  int response(int speaker, int partner_unit) const {
    return response_[speaker][static_cast<std::size_t>(partner_unit)];
  }
  int index_of(Token unit) const;

 private:
  std::vector<Token> units_;
  std::array<std::vector<std::vector<std::pair<int, double>>>, kChannels>
      successors_;
  std::array<std::vector<int>, kChannels> response_;
};

// Seed of dialogue `index` within a corpus drawn with `corpus_seed`.
std::uint64_t DialogueSeed(std::uint64_t corpus_seed, std::uint64_t index);

// Alternating-turn dialogue: IPUs, same-speaker pauses, floor-transfer
// offsets and contained backchannels sampled from `style`, durations rounded
// to whole frames with a one-frame minimum. Throws Error(kBadDuration)
// unless duration_ms is a non-negative multiple of the frame.
std::array<TokenStream, kChannels> GenerateDialogue(const DialogueStyle& style,
                                                    int duration_ms,
                                                    std::uint64_t seed);

struct Turn {
  int speaker = 0;
  std::vector<Token> utterance;
};

// Turn-based data in the two-channel layout: during each turn the other
// channel holds silence of the same length.
std::array<TokenStream, kChannels> BuildStage2Dialogue(
    const std::vector<Turn>& turns, const DialogueStyle& style);

// Turns drawn from the style (IPU-length utterances followed by a short
// trailing silence), assembled with BuildStage2Dialogue and cut or padded
// to duration_ms.
std::array<TokenStream, kChannels> GenerateStage2Dialogue(
    const DialogueStyle& style, int duration_ms, std::uint64_t seed);

enum class CorpusRegime { kFullDuplex, kTurnBased };

struct SynthCorpus {
  DialogueStyle style;
  std::uint64_t seed = 0;
  std::vector<Dialogue> dialogues;
};

// Dialogue i gets id "<prefix><i>" and seed DialogueSeed(seed, i); the
// result does not depend on generation order.
SynthCorpus GenerateCorpus(const DialogueStyle& style, int count,
                           int duration_ms, std::uint64_t seed,
                           CorpusRegime regime = CorpusRegime::kFullDuplex,
                           const std::string& id_prefix = "dlg");

}  // namespace duplex

#endif  // DUPLEX_SYNTH_H_
