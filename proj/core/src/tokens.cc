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

#include "duplex/tokens.h"

#include <algorithm>
#include <string>

#include "duplex/errors.h"

namespace duplex {

bool Vocab::is_silence(Token t) const {
  return std::find(silence_tokens.begin(), silence_tokens.end(), t) !=
         silence_tokens.end();
}

void Vocab::Validate() const {
  if (size <= 0) {
    throw Error(ErrorCode::kInvalidConfig, "vocab size must be positive");
  }
  if (frame_ms <= 0) {
    throw Error(ErrorCode::kInvalidConfig, "frame_ms must be positive");
  }
  if (silence_tokens.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "at least one silence token is required");
  }
  for (Token t : silence_tokens) {
    if (!is_unit(t)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "silence token " + std::to_string(t) +
                      " outside the speech-unit range");
    }
  }
}

int Vocab::FramesPerChunk(int chunk_ms) const {
  if (chunk_ms <= 0 || frame_ms <= 0 || chunk_ms % frame_ms != 0) {
    throw Error(ErrorCode::kBadChunkSize,
                "chunk of " + std::to_string(chunk_ms) +
                    " ms is not a positive multiple of the " +
                    std::to_string(frame_ms) + " ms frame");
  }
  return chunk_ms / frame_ms;
}

ChunkedDialogue ChunkStreams(const TokenStream& s0, const TokenStream& s1,
                             const Vocab& vocab, int chunk_ms,
                             PadPolicy pad) {
  const int m = vocab.FramesPerChunk(chunk_ms);
  if (s0.tokens.size() != s1.tokens.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "channel lengths differ: " + std::to_string(s0.tokens.size()) +
                    " vs " + std::to_string(s1.tokens.size()));
  }
  const std::size_t frames = s0.tokens.size();
  const std::size_t rem = frames % static_cast<std::size_t>(m);
  if (rem != 0 && pad == PadPolicy::kReject) {
    throw Error(ErrorCode::kBadChunkSize,
                std::to_string(frames) + " frames do not fill whole " +
                    std::to_string(chunk_ms) + " ms chunks");
  }
  const std::array<const std::vector<Token>*, kChannels> src = {&s0.tokens,
                                                                &s1.tokens};
  for (const auto* stream : src) {
    for (Token t : *stream) {
      if (!vocab.is_unit(t)) {
        throw Error(ErrorCode::kMalformedSequence,
                    "token " + std::to_string(t) + " is not a speech unit");
      }
    }
  }

  ChunkedDialogue out;
  out.vocab = vocab;
  out.chunk_ms = chunk_ms;
  out.frames_per_chunk = m;
  const std::size_t n_chunks = (frames + static_cast<std::size_t>(m) - 1) /
                               static_cast<std::size_t>(m);
  out.chunks.resize(n_chunks);
  for (std::size_t c = 0; c < n_chunks; ++c) {
    for (int ch = 0; ch < kChannels; ++ch) {
      auto& dst = out.chunks[c].frames[ch];
      dst.reserve(static_cast<std::size_t>(m));
      for (int f = 0; f < m; ++f) {
        const std::size_t idx = c * static_cast<std::size_t>(m) +
                                static_cast<std::size_t>(f);
        dst.push_back(idx < frames ? (*src[ch])[idx] : vocab.silence());
      }
    }
  }
  return out;
}

DedupDialogue Deduplicate(const ChunkedDialogue& dialogue) {
  DedupDialogue out;
  out.vocab = dialogue.vocab;
  out.chunk_ms = dialogue.chunk_ms;
  out.chunks.resize(dialogue.chunks.size());
  for (int ch = 0; ch < kChannels; ++ch) {
    bool have_prev = false;
    Token prev = 0;
    for (std::size_t c = 0; c < dialogue.chunks.size(); ++c) {
      auto& novel = out.chunks[c].novel[ch];
      for (Token t : dialogue.chunks[c].frames[ch]) {
        if (!have_prev || t != prev) novel.push_back(t);
        prev = t;
        have_prev = true;
      }
    }
  }
  return out;
}

ChunkedDialogue Interpolate(const DedupDialogue& dialogue,
                            InterpolationReport* report) {
  const int m = dialogue.frames_per_chunk();
  ChunkedDialogue out;
  out.vocab = dialogue.vocab;
  out.chunk_ms = dialogue.chunk_ms;
  out.frames_per_chunk = m;
  out.chunks.resize(dialogue.chunks.size());

  for (int ch = 0; ch < kChannels; ++ch) {
    bool have_prev = false;
    Token carry = dialogue.vocab.silence();
    for (std::size_t c = 0; c < dialogue.chunks.size(); ++c) {
      const auto& novel = dialogue.chunks[c].novel[ch];
      auto& frames = out.chunks[c].frames[ch];
      const int k = static_cast<int>(novel.size());
      if (k > m) {
        throw Error(ErrorCode::kChunkOverflow,
                    "chunk " + std::to_string(c) + " channel " +
                        std::to_string(ch) + " holds " + std::to_string(k) +
                        " novel tokens for " + std::to_string(m) + " frames");
      }
      if (k == 0) {
        if (!have_prev && report != nullptr) ++report->empty_carry_over;
        frames.assign(static_cast<std::size_t>(m), carry);
        have_prev = true;
        continue;
      }
      frames.reserve(static_cast<std::size_t>(m));
      const int base = m / k;
      const int extra = m % k;
      for (int i = 0; i < k; ++i) {
        const int reps = base + (i < extra ? 1 : 0);
        frames.insert(frames.end(), static_cast<std::size_t>(reps),
                      novel[static_cast<std::size_t>(i)]);
      }
      carry = novel.back();
      have_prev = true;
    }
  }
  return out;
}

std::array<TokenStream, kChannels> ToStreams(const ChunkedDialogue& dialogue) {
  std::array<TokenStream, kChannels> out;
  for (int ch = 0; ch < kChannels; ++ch) {
    out[ch].speaker = ch;
    out[ch].tokens.reserve(dialogue.chunks.size() *
                           static_cast<std::size_t>(dialogue.frames_per_chunk));
    for (const auto& chunk : dialogue.chunks) {
      out[ch].tokens.insert(out[ch].tokens.end(), chunk.frames[ch].begin(),
                            chunk.frames[ch].end());
    }
  }
  return out;
}

void AppendChunk(const Vocab& vocab, const DedupChunk& chunk,
                 std::vector<Token>& out) {
  out.push_back(vocab.tag_s0());
  out.insert(out.end(), chunk.novel[0].begin(), chunk.novel[0].end());
  if (chunk.s1_tag_present()) {
    out.push_back(vocab.tag_s1());
    out.insert(out.end(), chunk.novel[1].begin(), chunk.novel[1].end());
  }
}

std::vector<Token> Flatten(const DedupDialogue& dialogue) {
  std::vector<Token> out;
  for (const auto& chunk : dialogue.chunks) {
    AppendChunk(dialogue.vocab, chunk, out);
  }
  return out;
}

namespace {

[[noreturn]] void Malformed(std::size_t pos, const std::string& why) {
  throw Error(ErrorCode::kMalformedSequence,
              "position " + std::to_string(pos) + ": " + why);
}

}  // namespace

DedupDialogue Parse(std::span<const Token> tokens, const Vocab& vocab,
                    int chunk_ms) {
  const std::size_t m = static_cast<std::size_t>(vocab.FramesPerChunk(chunk_ms));
  DedupDialogue out;
  out.vocab = vocab;
  out.chunk_ms = chunk_ms;

  int channel = -1;  // -1 before the first [S0]
  std::array<bool, kChannels> have_prev = {false, false};
  std::array<Token, kChannels> prev = {0, 0};

  auto close_s1 = [&](std::size_t pos) {
    if (channel == 1 && out.chunks.back().novel[1].empty()) {
      Malformed(pos, "[S1] without any speech units");
    }
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token t = tokens[i];
    if (t == vocab.tag_s0()) {
      close_s1(i);
      out.chunks.emplace_back();
      channel = 0;
    } else if (t == vocab.tag_s1()) {
      if (channel < 0) Malformed(i, "sequence must start with [S0]");
      if (channel == 1) Malformed(i, "second [S1] in one chunk");
      channel = 1;
    } else if (vocab.is_unit(t)) {
      if (channel < 0) Malformed(i, "sequence must start with [S0]");
      auto& novel = out.chunks.back().novel[channel];
      if (novel.size() == m) {
        Malformed(i, "channel " + std::to_string(channel) +
                         " exceeds " + std::to_string(m) +
                         " units in one chunk");
      }
      if (have_prev[channel] && prev[channel] == t) {
        Malformed(i, "unit " + std::to_string(t) +
                         " repeats the previous unit of its channel");
      }
      novel.push_back(t);
      prev[channel] = t;
      have_prev[channel] = true;
    } else {
      Malformed(i, "id " + std::to_string(t) + " outside the vocabulary");
    }
  }
  close_s1(tokens.size());
  return out;
}

DedupDialogue Rechunk(const DedupDialogue& dialogue, int chunk_ms) {
  auto streams = ToStreams(Interpolate(dialogue));
  return Deduplicate(ChunkStreams(streams[0], streams[1], dialogue.vocab,
                                  chunk_ms, PadPolicy::kPad));
}

}  // namespace duplex
