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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "duplex/vad.h"
#include "error_matchers.h"
#include "test_support.h"

namespace duplex {
namespace {

using testing::CodeOf;

TokenStream Runs(std::initializer_list<std::pair<Token, int>> runs) {
  TokenStream s;
  for (auto [t, n] : runs) s.tokens.insert(s.tokens.end(), n, t);
  return s;
}

TEST(VadTest, AllSilence) {
  Vocab v;
  EXPECT_TRUE(Vad(Runs({{0, 30}}), v).empty());
  EXPECT_TRUE(Vad(TokenStream{}, v).empty());
}

TEST(VadTest, TenVoicedFrames) {
  Vocab v;
  auto segs = Vad(Runs({{5, 3}, {6, 7}}), v);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0], (VadSegment{0, 0, 400}));
}

TEST(VadTest, Bridging) {
  Vocab v;
  auto stream = Runs({{5, 5}, {0, 2}, {6, 5}});
  EXPECT_EQ(Vad(stream, v).size(), 2u);
  auto segs = Vad(stream, v, {0, 120});
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].duration_ms(), 12 * 40);
  // Only silences strictly shorter than bridge_ms are filled.
  EXPECT_EQ(Vad(stream, v, {0, 80}).size(), 2u);
  // Leading and trailing silence is never bridged.
  auto edge = Vad(Runs({{0, 1}, {5, 2}, {0, 1}}), v, {0, 400});
  ASSERT_EQ(edge.size(), 1u);
  EXPECT_EQ(edge[0], (VadSegment{0, 40, 120}));
}

TEST(VadTest, MinVoicedDropsShortRuns) {
  Vocab v;
  auto stream = Runs({{5, 2}, {0, 4}, {6, 6}, {0, 3}, {7, 1}});
  auto segs = Vad(stream, v, {120, 0});
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0], (VadSegment{0, 240, 480}));
}

TEST(VadTest, SilenceSetAndChannel) {
  Vocab v;
  v.silence_tokens = {0, 9};
  auto s = Runs({{9, 2}, {3, 2}, {0, 1}, {9, 1}, {4, 1}});
  s.speaker = 1;
  auto segs = Vad(s, v);
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0], (VadSegment{1, 80, 160}));
  EXPECT_EQ(segs[1], (VadSegment{1, 240, 280}));
}

TEST(VadTest, ThresholdsMustBeFrameMultiples) {
  Vocab v;
  EXPECT_EQ(CodeOf([&] { Vad(Runs({{1, 3}}), v, {50, 0}); }),
            ErrorCode::kInvalidConfig);
  EXPECT_EQ(CodeOf([&] { Vad(Runs({{1, 3}}), v, {0, 30}); }),
            ErrorCode::kInvalidConfig);
}

TEST(VadTest, BridgingOnlyAddsVoicedTime) {
  std::mt19937_64 rng(41);
  const Vocab v = testing::SmallVocab(3);
  for (int i = 0; i < 500; ++i) {
    auto s = testing::RandomStream(rng, v, 200, 6, 0);
    int raw = 0, bridged = 0;
    for (const auto& seg : Vad(s, v)) raw += seg.duration_ms();
    for (const auto& seg : Vad(s, v, {0, 40 * testing::UniformInt(rng, 0, 8)})) {
      bridged += seg.duration_ms();
    }
    EXPECT_GE(bridged, raw);
  }
}

}  // namespace
}  // namespace duplex
