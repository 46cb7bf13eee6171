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

#include "duplex/decoder.h"

#include <string>

#include "duplex/errors.h"

namespace duplex {

ChunkGenerator::ChunkGenerator(const Predictor& model, const Vocab& vocab,
                               int chunk_ms, Sampler& sampler,
                               OverflowPolicy policy, DecodeStats* stats)
    : model_(model),
      vocab_(vocab),
      m_(vocab.FramesPerChunk(chunk_ms)),
      sampler_(sampler),
      policy_(policy),
      stats_(stats) {
  if (model.vocab_ext() != vocab.extended_size()) {
    throw Error(ErrorCode::kInvalidConfig,
                "model vocabulary " + std::to_string(model.vocab_ext()) +
                    " does not match token format " +
                    std::to_string(vocab.extended_size()));
  }
}

Token ChunkGenerator::Draw(std::span<const Token> context,
                           const std::vector<std::uint8_t>& mask) {
  const auto dist = model_.NextDist(context);
  return sampler_.Sample(dist, mask);
}

std::vector<std::uint8_t> ChunkGenerator::UnitMask(
    std::optional<Token> prev_unit) const {
  std::vector<std::uint8_t> mask(
      static_cast<std::size_t>(vocab_.extended_size()), 0);
  for (Token u = 0; u < vocab_.size; ++u) mask[u] = 1;
  if (prev_unit) mask[*prev_unit] = 0;
  return mask;
}

ChunkGenerator::OwnPart ChunkGenerator::GenerateOwn(
    std::vector<Token>& context, std::optional<Token> prev_unit) {
  if (stats_) ++stats_->parts;
  context.push_back(vocab_.tag_s0());
  OwnPart part;
  while (true) {
    const bool full = static_cast<int>(part.units.size()) >= m_;
    if (full && policy_ == OverflowPolicy::kTruncate) {
      if (stats_) ++stats_->capacity_hits;
      return part;
    }
    auto mask = UnitMask(prev_unit);
    mask[vocab_.tag_s0()] = 1;
    mask[vocab_.tag_s1()] = 1;
    const Token t = Draw(context, mask);
    if (vocab_.is_tag(t)) {
      part.end_tag = t;
      return part;
    }
    if (full) {
      throw Error(ErrorCode::kChunkOverflow,
                  "channel 0 exceeds " + std::to_string(m_) + " units");
    }
    context.push_back(t);
    part.units.push_back(t);
    prev_unit = t;
  }
}

std::vector<Token> ChunkGenerator::GenerateOther(
    std::vector<Token>& context, std::optional<Token> prev_unit) {
  std::vector<std::uint8_t> mask(
      static_cast<std::size_t>(vocab_.extended_size()), 0);
  mask[vocab_.tag_s0()] = 1;
  mask[vocab_.tag_s1()] = 1;
  if (Draw(context, mask) == vocab_.tag_s0()) {
    if (stats_) ++stats_->parts;
    return {};
  }
  context.push_back(vocab_.tag_s1());
  return GenerateOtherUnits(context, prev_unit);
}

std::vector<Token> ChunkGenerator::GenerateOtherUnits(
    std::vector<Token>& context, std::optional<Token> prev_unit) {
  if (stats_) ++stats_->parts;
  std::vector<Token> units;
  while (true) {
    const bool full = static_cast<int>(units.size()) >= m_;
    if (full && policy_ == OverflowPolicy::kTruncate) {
      if (stats_) ++stats_->capacity_hits;
      return units;
    }
    auto mask = UnitMask(prev_unit);
    if (!units.empty()) mask[vocab_.tag_s0()] = 1;
    const Token t = Draw(context, mask);
    if (t == vocab_.tag_s0()) return units;
    if (full) {
      throw Error(ErrorCode::kChunkOverflow,
                  "channel 1 exceeds " + std::to_string(m_) + " units");
    }
    context.push_back(t);
    units.push_back(t);
    prev_unit = t;
  }
}

std::array<std::optional<Token>, kChannels> LastUnits(
    std::span<const Token> flat, const Vocab& vocab) {
  std::array<std::optional<Token>, kChannels> last;
  int channel = 0;
  for (Token t : flat) {
    if (t == vocab.tag_s0()) {
      channel = 0;
    } else if (t == vocab.tag_s1()) {
      channel = 1;
    } else if (vocab.is_unit(t)) {
      last[channel] = t;
    }
  }
  return last;
}

DedupDialogue ContinueDialogue(const Predictor& model,
                               const DedupDialogue& prompt, int n_chunks,
                               Sampler& sampler, OverflowPolicy policy,
                               DecodeStats* stats) {
  if (n_chunks < 1) {
    throw Error(ErrorCode::kInvalidConfig, "n_chunks must be >= 1");
  }
  ChunkGenerator gen(model, prompt.vocab, prompt.chunk_ms, sampler, policy,
                     stats);
  DedupDialogue out = prompt;
  std::vector<Token> context = Flatten(prompt);
  auto last = LastUnits(context, prompt.vocab);
  for (int i = 0; i < n_chunks; ++i) {
    DedupChunk chunk;
    auto own = gen.GenerateOwn(context, last[0]);
    chunk.novel[0] = std::move(own.units);
    if (!own.end_tag) {
      chunk.novel[1] = gen.GenerateOther(context, last[1]);
    } else if (*own.end_tag == prompt.vocab.tag_s1()) {
      context.push_back(prompt.vocab.tag_s1());
      chunk.novel[1] = gen.GenerateOtherUnits(context, last[1]);
    }
    for (int c = 0; c < kChannels; ++c) {
      if (!chunk.novel[c].empty()) last[c] = chunk.novel[c].back();
    }
    out.chunks.push_back(std::move(chunk));
  }
  return out;
}

DedupDialogue ContinueTeacherForced(const Predictor& model,
                                    const DedupDialogue& prompt,
                                    std::span<const std::vector<Token>> channel1,
                                    Sampler& sampler, OverflowPolicy policy,
                                    DecodeStats* stats) {
  ChunkGenerator gen(model, prompt.vocab, prompt.chunk_ms, sampler, policy,
                     stats);
  DedupDialogue out = prompt;
  std::vector<Token> context = Flatten(prompt);
  auto last = LastUnits(context, prompt.vocab);
  for (const auto& user : channel1) {
    DedupChunk chunk;
    chunk.novel[0] = gen.GenerateOwn(context, last[0]).units;
    chunk.novel[1] = user;
    if (!user.empty()) {
      context.push_back(prompt.vocab.tag_s1());
      context.insert(context.end(), user.begin(), user.end());
    }
    for (int c = 0; c < kChannels; ++c) {
      if (!chunk.novel[c].empty()) last[c] = chunk.novel[c].back();
    }
    out.chunks.push_back(std::move(chunk));
  }
  return out;
}

std::vector<Token> EstimateUserChunk(const Predictor& model,
                                     std::span<const Token> context,
                                     const Vocab& vocab, int chunk_ms,
                                     Sampler& sampler, OverflowPolicy policy,
                                     DecodeStats* stats) {
  int channel = -1;
  for (Token t : context) {
    if (t == vocab.tag_s0()) channel = 0;
    if (t == vocab.tag_s1()) channel = 1;
  }
  if (channel != 0) {
    throw Error(ErrorCode::kMalformedSequence,
                "context must end inside a channel-0 part");
  }
  ChunkGenerator gen(model, vocab, chunk_ms, sampler, policy, stats);
  std::vector<Token> scratch(context.begin(), context.end());
  return gen.GenerateOther(scratch, LastUnits(context, vocab)[1]);
}

}  // namespace duplex
