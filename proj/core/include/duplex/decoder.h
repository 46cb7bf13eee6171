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

#ifndef DUPLEX_DECODER_H_
#define DUPLEX_DECODER_H_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "duplex/predictor.h"
#include "duplex/sampler.h"
#include "duplex/tokens.h"

namespace duplex {

// What to do when a model keeps emitting units after a channel already holds
// frames_per_chunk of them in the current chunk.
enum class OverflowPolicy {
  kTruncate,  // stop the channel and force the next tag
  kError,     // throw Error(kChunkOverflow)
};

struct DecodeStats {
  int capacity_hits = 0;  // parts closed by truncation
  int parts = 0;          // channel parts generated

  void Add(const DecodeStats& o) {
    capacity_hits += o.capacity_hits;
    parts += o.parts;
  }
};

// Grammar-constrained generator over the flattened format. Every sampling
// call is restricted to tokens that keep the sequence parseable: a unit may
// not repeat the previous unit of its channel, and [S1] is followed by at
// least one unit.
class ChunkGenerator {
 public:
  // Throws Error(kInvalidConfig) if the model vocabulary does not match.
  ChunkGenerator(const Predictor& model, const Vocab& vocab, int chunk_ms,
                 Sampler& sampler, OverflowPolicy policy,
                 DecodeStats* stats = nullptr);

  struct OwnPart {
    std::vector<Token> units;
    // The tag drawn to close the part; empty when capacity closed it.
    std::optional<Token> end_tag;
  };

  // `context` ends at a chunk boundary. Appends [S0] and the channel-0 units.
  // `prev_unit` is the last channel-0 unit already in the context.
  OwnPart GenerateOwn(std::vector<Token>& context,
                      std::optional<Token> prev_unit);

  // `context` ends right after a channel-0 part. Draws among {[S0], [S1]};
  // on [S1] appends it and generates the channel-1 units. The closing [S0]
  // is not appended.
  std::vector<Token> GenerateOther(std::vector<Token>& context,
                                   std::optional<Token> prev_unit);

  // Same as GenerateOther after [S1] was already chosen and appended.
  std::vector<Token> GenerateOtherUnits(std::vector<Token>& context,
                                        std::optional<Token> prev_unit);

  int frames_per_chunk() const { return m_; }
  const Vocab& vocab() const { return vocab_; }

 private:
  Token Draw(std::span<const Token> context,
             const std::vector<std::uint8_t>& mask);
  std::vector<std::uint8_t> UnitMask(std::optional<Token> prev_unit) const;

  const Predictor& model_;
  Vocab vocab_;
  int m_;
  Sampler& sampler_;
  OverflowPolicy policy_;
  DecodeStats* stats_;
};

// Last unit of each channel in a flattened sequence.
std::array<std::optional<Token>, kChannels> LastUnits(
    std::span<const Token> flat, const Vocab& vocab);

// Extends `prompt` by n_chunks generated chunks, both channels sampled.
// Throws Error(kInvalidConfig) if n_chunks < 1.
DedupDialogue ContinueDialogue(const Predictor& model,
                               const DedupDialogue& prompt, int n_chunks,
                               Sampler& sampler,
                               OverflowPolicy policy = OverflowPolicy::kTruncate,
                               DecodeStats* stats = nullptr);

// Like ContinueDialogue but channel 1 of each new chunk is given.
DedupDialogue ContinueTeacherForced(
    const Predictor& model, const DedupDialogue& prompt,
    std::span<const std::vector<Token>> channel1, Sampler& sampler,
    OverflowPolicy policy = OverflowPolicy::kTruncate,
    DecodeStats* stats = nullptr);

// Samples the channel-1 side of the chunk whose channel-0 part ends
// `context`. The result holds at most frames_per_chunk units under
// kTruncate and is empty when the model closes the chunk without [S1].
std::vector<Token> EstimateUserChunk(
    const Predictor& model, std::span<const Token> context, const Vocab& vocab,
    int chunk_ms, Sampler& sampler,
    OverflowPolicy policy = OverflowPolicy::kTruncate,
    DecodeStats* stats = nullptr);

}  // namespace duplex

#endif  // DUPLEX_DECODER_H_
