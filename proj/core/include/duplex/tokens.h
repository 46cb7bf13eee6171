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

#ifndef DUPLEX_TOKENS_H_
#define DUPLEX_TOKENS_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace duplex {

// Speech-unit ids live in [0, Vocab::size); the two speaker tags follow
// directly after, so the extended vocabulary is contiguous.
using Token = std::int32_t;

inline constexpr int kChannels = 2;

struct Vocab {
  int size = 501;
  int frame_ms = 40;
  std::vector<Token> silence_tokens = {0};

  Token tag_s0() const { return size; }
  Token tag_s1() const { return size + 1; }
  Token tag(int channel) const { return size + channel; }
  int extended_size() const { return size + 2; }

  Token silence() const { return silence_tokens.front(); }
  bool is_unit(Token t) const { return t >= 0 && t < size; }
  bool is_tag(Token t) const { return t == tag_s0() || t == tag_s1(); }
  bool is_silence(Token t) const;

  // Throws Error(kInvalidConfig) when the invariants do not hold.
  void Validate() const;
  // Throws Error(kBadChunkSize) unless chunk_ms is a positive multiple of
  // frame_ms.
  int FramesPerChunk(int chunk_ms) const;

  bool operator==(const Vocab&) const = default;
};

struct TokenStream {
  int speaker = 0;
  std::vector<Token> tokens;

  int duration_ms(const Vocab& vocab) const {
    return static_cast<int>(tokens.size()) * vocab.frame_ms;
  }
  bool operator==(const TokenStream&) const = default;
};

// Full-rate frames of both channels over one chunk.
struct FrameChunk {
  std::array<std::vector<Token>, kChannels> frames;
  bool operator==(const FrameChunk&) const = default;
};

// The raw interleaved view: both streams cut into equal wall-clock chunks.
struct ChunkedDialogue {
  Vocab vocab;
  int chunk_ms = 160;
  int frames_per_chunk = 4;
  std::vector<FrameChunk> chunks;

  // Length of the tagged full-rate sequence: [S0] m units [S1] m units per
  // chunk.
  std::size_t raw_interleaved_length() const {
    return chunks.size() * static_cast<std::size_t>(2 + 2 * frames_per_chunk);
  }
  bool operator==(const ChunkedDialogue&) const = default;
};

struct DedupChunk {
  std::array<std::vector<Token>, kChannels> novel;

  // [S1] is omitted from the wire form when channel 1 has nothing new.
  bool s1_tag_present() const { return !novel[1].empty(); }
  bool operator==(const DedupChunk&) const = default;
};

struct DedupDialogue {
  Vocab vocab;
  int chunk_ms = 160;
  std::vector<DedupChunk> chunks;

  int frames_per_chunk() const { return vocab.FramesPerChunk(chunk_ms); }
  bool operator==(const DedupDialogue&) const = default;
};

enum class PadPolicy { kPad, kReject };

// Splits two equal-length streams into chunks of chunk_ms. A trailing partial
// chunk is right-padded with the first silence token (kPad) or rejected with
// kBadChunkSize (kReject). Unequal stream lengths throw kLengthMismatch.
ChunkedDialogue ChunkStreams(const TokenStream& s0, const TokenStream& s1,
                             const Vocab& vocab, int chunk_ms,
                             PadPolicy pad = PadPolicy::kPad);

// Global per-channel run-length reduction. A frame is novel when it differs
// from the previous frame of the same channel; frame 0 is always novel. Each
// novel token lands in the chunk holding its onset frame.
DedupDialogue Deduplicate(const ChunkedDialogue& dialogue);

struct InterpolationReport {
  // Chunks where a channel had no novel tokens and nothing to carry over;
  // these were filled with the first silence token.
  int empty_carry_over = 0;
};

// Rebuilds full-rate chunks. k novel tokens share m frames: each gets m / k
// frames and the first m % k get one more. A chunk with no novel tokens
// repeats the channel's last reconstructed frame. Throws kChunkOverflow when
// k > m.
ChunkedDialogue Interpolate(const DedupDialogue& dialogue,
                            InterpolationReport* report = nullptr);

// Concatenates chunk frames back into one stream per channel.
std::array<TokenStream, kChannels> ToStreams(const ChunkedDialogue& dialogue);

// Wire form: per chunk [S0] s0_novel... then [S1] s1_novel... when present.
std::vector<Token> Flatten(const DedupDialogue& dialogue);
void AppendChunk(const Vocab& vocab, const DedupChunk& chunk,
                 std::vector<Token>& out);

// Inverse of Flatten. Throws kMalformedSequence on a leading non-[S0] token,
// a repeated [S1] within a chunk, an [S1] with no units after it, a unit that
// repeats the previous unit of its channel, an out-of-range id, or a channel
// holding more than frames_per_chunk units in one chunk.
DedupDialogue Parse(std::span<const Token> tokens, const Vocab& vocab,
                    int chunk_ms);

// Re-expresses a dialogue at another chunk duration through its full-rate
// reconstruction.
DedupDialogue Rechunk(const DedupDialogue& dialogue, int chunk_ms);

}  // namespace duplex

#endif  // DUPLEX_TOKENS_H_
