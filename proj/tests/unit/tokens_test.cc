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

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "duplex/errors.h"
#include "duplex/tokens.h"
#include "error_matchers.h"
#include "test_support.h"

namespace duplex {
namespace {

using testing::CodeOf;
using testing::RandomChunked;
using testing::RandomWireDialogue;

TokenStream Stream(int speaker, std::vector<Token> tokens) {
  return TokenStream{speaker, std::move(tokens)};
}

// The two-chunk example drawn in the token format figure, plus one chunk
// where nothing changes.
struct FigureExample : ::testing::Test {
  Vocab vocab;
  TokenStream s0 = Stream(0, {75, 75, 75, 75, 17, 17, 338, 338, 338, 338, 338,
                              338});
  TokenStream s1 = Stream(1, std::vector<Token>(12, 89));
};

TEST(VocabTest, DefaultsAndTags) {
  Vocab v;
  EXPECT_EQ(v.size, 501);
  EXPECT_EQ(v.frame_ms, 40);
  EXPECT_EQ(v.tag_s0(), 501);
  EXPECT_EQ(v.tag_s1(), 502);
  EXPECT_EQ(v.extended_size(), 503);
  EXPECT_NO_THROW(v.Validate());
}

TEST(VocabTest, FramesPerChunk) {
  Vocab v;
  EXPECT_EQ(v.FramesPerChunk(240), 6);
  EXPECT_EQ(v.FramesPerChunk(160), 4);
  EXPECT_EQ(v.FramesPerChunk(200), 5);
  EXPECT_EQ(CodeOf([&] { v.FramesPerChunk(150); }), ErrorCode::kBadChunkSize);
  EXPECT_EQ(CodeOf([&] { v.FramesPerChunk(0); }), ErrorCode::kBadChunkSize);
}

TEST(VocabTest, RejectsBadSilenceSets) {
  Vocab v;
  v.silence_tokens = {};
  EXPECT_EQ(CodeOf([&] { v.Validate(); }), ErrorCode::kInvalidConfig);
  v.silence_tokens = {501};
  EXPECT_EQ(CodeOf([&] { v.Validate(); }), ErrorCode::kInvalidConfig);
  v.silence_tokens = {0, 3};
  EXPECT_NO_THROW(v.Validate());
  EXPECT_TRUE(v.is_silence(3));
  EXPECT_FALSE(v.is_silence(4));
}

TEST(ChunkStreamsTest, SingleChunk) {
  Vocab v;
  auto d = ChunkStreams(Stream(0, {1, 2, 3, 4}), Stream(1, {5, 6, 7, 8}), v,
                        160);
  ASSERT_EQ(d.chunks.size(), 1u);
  EXPECT_EQ(d.frames_per_chunk, 4);
  EXPECT_EQ(d.chunks[0].frames[0], (std::vector<Token>{1, 2, 3, 4}));
  EXPECT_EQ(d.chunks[0].frames[1], (std::vector<Token>{5, 6, 7, 8}));
}

TEST(ChunkStreamsTest, Errors) {
  Vocab v;
  EXPECT_EQ(CodeOf([&] {
              ChunkStreams(Stream(0, {1, 2}), Stream(1, {1}), v, 160);
            }),
            ErrorCode::kLengthMismatch);
  EXPECT_EQ(CodeOf([&] {
              ChunkStreams(Stream(0, {1}), Stream(1, {1}), v, 100);
            }),
            ErrorCode::kBadChunkSize);
  EXPECT_EQ(CodeOf([&] {
              ChunkStreams(Stream(0, {1, 2}), Stream(1, {1, 2}), v, 160,
                           PadPolicy::kReject);
            }),
            ErrorCode::kBadChunkSize);
}

TEST(ChunkStreamsTest, PadsWithFirstSilenceToken) {
  Vocab v;
  v.silence_tokens = {7, 0};
  auto d = ChunkStreams(Stream(0, {1, 2, 3, 4, 5}), Stream(1, {1, 1, 1, 1, 1}),
                        v, 160);
  ASSERT_EQ(d.chunks.size(), 2u);
  EXPECT_EQ(d.chunks[1].frames[0], (std::vector<Token>{5, 7, 7, 7}));
}

TEST_F(FigureExample, TwoChunksMatchFigureRows) {
  auto chunked = ChunkStreams(
      Stream(0, {75, 75, 75, 75, 17, 17, 338, 338}),
      Stream(1, std::vector<Token>(8, 89)), vocab, 160);
  ASSERT_EQ(chunked.chunks.size(), 2u);
  EXPECT_EQ(chunked.chunks[0].frames[0], (std::vector<Token>{75, 75, 75, 75}));
  EXPECT_EQ(chunked.chunks[1].frames[0],
            (std::vector<Token>{17, 17, 338, 338}));
}

TEST_F(FigureExample, DedupWireForm) {
  auto d = Deduplicate(ChunkStreams(s0, s1, vocab, 160));
  ASSERT_EQ(d.chunks.size(), 3u);
  EXPECT_EQ(d.chunks[0].novel[0], (std::vector<Token>{75}));
  EXPECT_EQ(d.chunks[0].novel[1], (std::vector<Token>{89}));
  EXPECT_TRUE(d.chunks[0].s1_tag_present());
  EXPECT_EQ(d.chunks[1].novel[0], (std::vector<Token>{17, 338}));
  EXPECT_TRUE(d.chunks[1].novel[1].empty());
  EXPECT_FALSE(d.chunks[1].s1_tag_present());
  EXPECT_TRUE(d.chunks[2].novel[0].empty());
  EXPECT_TRUE(d.chunks[2].novel[1].empty());
  const Token s0t = vocab.tag_s0(), s1t = vocab.tag_s1();
  EXPECT_EQ(Flatten(d),
            (std::vector<Token>{s0t, 75, s1t, 89, s0t, 17, 338, s0t}));
}

TEST_F(FigureExample, InterpolationRebuildsFullRate) {
  auto chunked = ChunkStreams(s0, s1, vocab, 160);
  EXPECT_EQ(Interpolate(Deduplicate(chunked)), chunked);
}

TEST(InterpolateTest, RemainderGoesToEarliestTokens) {
  Vocab v;
  DedupDialogue d{v, 160, {}};
  DedupChunk c;
  c.novel[0] = {1, 2, 3};
  c.novel[1] = {4};
  d.chunks.push_back(c);
  auto out = Interpolate(d);
  EXPECT_EQ(out.chunks[0].frames[0], (std::vector<Token>{1, 1, 2, 3}));
  EXPECT_EQ(out.chunks[0].frames[1], (std::vector<Token>{4, 4, 4, 4}));

  DedupDialogue e{v, 240, {}};
  DedupChunk c2;
  c2.novel[0] = {1, 2, 3, 4};
  c2.novel[1] = {9};
  e.chunks.push_back(c2);
  EXPECT_EQ(Interpolate(e).chunks[0].frames[0],
            (std::vector<Token>{1, 1, 2, 2, 3, 4}));
}

TEST(InterpolateTest, EmptyFirstChunkUsesSilenceAndCounts) {
  Vocab v;
  DedupDialogue d{v, 160, {}};
  DedupChunk a;
  a.novel[0] = {5};
  d.chunks.push_back(a);
  d.chunks.push_back(DedupChunk{});
  InterpolationReport report;
  auto out = Interpolate(d, &report);
  EXPECT_EQ(report.empty_carry_over, 1);
  EXPECT_EQ(out.chunks[0].frames[1], (std::vector<Token>{0, 0, 0, 0}));
  EXPECT_EQ(out.chunks[1].frames[0], (std::vector<Token>{5, 5, 5, 5}));
}

TEST(InterpolateTest, OverflowThrows) {
  Vocab v;
  DedupDialogue d{v, 160, {}};
  DedupChunk c;
  c.novel[0] = {1, 2, 3, 4, 5};
  d.chunks.push_back(c);
  EXPECT_EQ(CodeOf([&] { Interpolate(d); }), ErrorCode::kChunkOverflow);
}

TEST(FlattenTest, EmptyAndSilent) {
  Vocab v;
  EXPECT_TRUE(Flatten(DedupDialogue{v, 160, {}}).empty());
  auto d = Deduplicate(ChunkStreams(Stream(0, std::vector<Token>(8, 0)),
                                    Stream(1, std::vector<Token>(8, 0)), v,
                                    160));
  EXPECT_EQ(Flatten(d),
            (std::vector<Token>{v.tag_s0(), 0, v.tag_s1(), 0, v.tag_s0()}));
}

TEST(ParseTest, FigureChunk) {
  Vocab v;
  std::vector<Token> flat = {v.tag_s0(), 75, v.tag_s1(), 89};
  auto d = Parse(flat, v, 160);
  ASSERT_EQ(d.chunks.size(), 1u);
  EXPECT_EQ(d.chunks[0].novel[0], (std::vector<Token>{75}));
  EXPECT_EQ(d.chunks[0].novel[1], (std::vector<Token>{89}));
  EXPECT_TRUE(Parse(std::vector<Token>{}, v, 160).chunks.empty());
}

TEST(ParseTest, RejectsMalformed) {
  Vocab v;
  const Token s0 = v.tag_s0(), s1 = v.tag_s1();
  const std::vector<std::vector<Token>> bad = {
      {s1, 89},                 // no leading [S0]
      {75, s0},                 // unit before [S0]
      {s0, 1, s1, 2, s1, 3},    // double [S1]
      {s0, 1, s1},              // [S1] without units
      {s0, 1, s1, s0},          // [S1] without units, mid sequence
      {s0, 1, 2, 3, 4, 5},      // more than 4 units at 160 ms
      {s0, 1, 1},               // repeated unit
      {s0, 1, s0, 1},           // repeat across chunks
      {s0, 600},                // outside the vocabulary
      {s0, -1},
  };
  for (const auto& seq : bad) {
    EXPECT_EQ(CodeOf([&] { Parse(seq, v, 160); }),
              ErrorCode::kMalformedSequence);
  }
  // Repeats are judged per channel.
  EXPECT_NO_THROW(Parse(std::vector<Token>{s0, 1, s1, 1, s0, 2, s1, 3}, v,
                        160));
}

TEST(CodecProperty, WireRoundTrip) {
  std::mt19937_64 rng(11);
  const Vocab v = testing::SmallVocab(5);
  for (int i = 0; i < 2000; ++i) {
    const int chunk_ms = 40 * testing::UniformInt(rng, 1, 6);
    auto d = RandomWireDialogue(rng, v, chunk_ms, 12);
    ASSERT_EQ(Parse(Flatten(d), v, chunk_ms), d);
  }
}

TEST(CodecProperty, StreamRoundTripAndTagRule) {
  std::mt19937_64 rng(12);
  const Vocab v = testing::SmallVocab(4);
  for (int i = 0; i < 2000; ++i) {
    const int chunk_ms = 40 * testing::UniformInt(rng, 1, 6);
    const auto chunked = RandomChunked(rng, v, chunk_ms, 10);
    const auto dedup = Deduplicate(chunked);
    const auto rebuilt = Interpolate(dedup);
    ASSERT_EQ(rebuilt.chunks.size(), chunked.chunks.size());
    ASSERT_EQ(Deduplicate(rebuilt), dedup);
    ASSERT_EQ(Parse(Flatten(dedup), v, chunk_ms), dedup);

    const auto flat = Flatten(dedup);
    int s0_count = 0;
    for (Token t : flat) s0_count += t == v.tag_s0();
    ASSERT_EQ(s0_count, static_cast<int>(dedup.chunks.size()));
    if (!chunked.chunks.empty()) {
      ASSERT_FALSE(dedup.chunks[0].novel[0].empty());
      ASSERT_FALSE(dedup.chunks[0].novel[1].empty());
    }
  }
}

TEST(CodecProperty, ConstantStreamCompresses) {
  Vocab v;
  for (int c = 1; c <= 20; ++c) {
    auto chunked = ChunkStreams(Stream(0, std::vector<Token>(4 * c, 9)),
                                Stream(1, std::vector<Token>(4 * c, 3)), v,
                                160);
    auto d = Deduplicate(chunked);
    int units0 = 0;
    for (const auto& ch : d.chunks) units0 += ch.novel[0].size();
    EXPECT_EQ(units0, 1);
    const auto flat = Flatten(d);
    EXPECT_EQ(std::count(flat.begin(), flat.end(), v.tag_s0()), c);
    EXPECT_LT(flat.size(), chunked.raw_interleaved_length());
  }
}

TEST(RechunkTest, PreservesStreams) {
  std::mt19937_64 rng(13);
  const Vocab v = testing::SmallVocab(6);
  for (int i = 0; i < 200; ++i) {
    auto chunked = RandomChunked(rng, v, 480, 5);
    auto d = Deduplicate(chunked);
    auto r = Rechunk(d, 160);
    EXPECT_EQ(r.chunks.size(), 3 * d.chunks.size());
    for (int ch = 0; ch < kChannels; ++ch) {
      std::vector<Token> a, b;
      for (const auto& c : d.chunks) {
        a.insert(a.end(), c.novel[ch].begin(), c.novel[ch].end());
      }
      for (const auto& c : r.chunks) {
        b.insert(b.end(), c.novel[ch].begin(), c.novel[ch].end());
      }
      EXPECT_EQ(a, b);
    }
  }
}

}  // namespace
}  // namespace duplex
