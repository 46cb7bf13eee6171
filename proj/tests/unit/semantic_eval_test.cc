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
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "duplex/ngram_model.h"
#include "duplex/semantic_eval.h"
#include "duplex/stats.h"
#include "duplex/synth.h"
#include "error_matchers.h"
#include "test_support.h"

namespace duplex {
namespace {

using testing::CodeOf;
using testing::LambdaPredictor;

DedupDialogue ToDedup(const Dialogue& d, int chunk_ms) {
  return Deduplicate(
      ChunkStreams(d.channels[0], d.channels[1], d.vocab, chunk_ms));
}

// Unigram model with weights 1..V, independent of the history.
LambdaPredictor Unigram(int v) {
  return LambdaPredictor(v, [v](std::span<const Token>) {
    std::vector<double> p(static_cast<std::size_t>(v));
    const double z = v * (v + 1) / 2.0;
    for (int i = 0; i < v; ++i) p[static_cast<std::size_t>(i)] = (i + 1) / z;
    return p;
  });
}

TEST(SemanticEvalTest, MatchesDirectSum) {
  std::mt19937_64 rng(5);
  const Vocab vocab = testing::SmallVocab(6);
  const int v = vocab.extended_size();
  const auto model = Unigram(v);
  const double z = v * (v + 1) / 2.0;
  for (int it = 0; it < 300; ++it) {
    ScoredDialogue sd{testing::RandomWireDialogue(rng, vocab, 160, 8), 0};
    const int n = static_cast<int>(sd.dialogue.chunks.size());
    sd.prompt_chunks = testing::UniformInt(rng, 0, n);
    DedupDialogue prompt = sd.dialogue;
    prompt.chunks.resize(static_cast<std::size_t>(sd.prompt_chunks));
    const auto full = Flatten(sd.dialogue);
    const std::size_t begin = Flatten(prompt).size();
    if (begin == full.size()) {
      EXPECT_EQ(CodeOf([&] { DialoguePerplexity(model, sd); }),
                ErrorCode::kEmptySequence);
      continue;
    }
    double nll = 0;
    for (std::size_t i = begin; i < full.size(); ++i) {
      nll -= std::log((full[i] + 1) / z);
    }
    const double expect = std::exp(nll / static_cast<double>(full.size() - begin));
    EXPECT_NEAR(DialoguePerplexity(model, sd), expect, 1e-9 * expect);
  }
}

TEST(SemanticEvalTest, MedianOverDialogues) {
  // Per-dialogue perplexities 10, 20 and 400 come from uniform models over
  // that many entries; here one model scores three dialogues whose
  // continuations differ, so use the per-dialogue output instead.
  const Vocab vocab = testing::SmallVocab(6);
  const int v = vocab.extended_size();
  const auto uniform = LambdaPredictor(
      v, [v](std::span<const Token>) { return testing::Uniform(v); });
  std::mt19937_64 rng(9);
  std::vector<ScoredDialogue> set;
  for (int i = 0; i < 3; ++i) {
    DedupDialogue d;
    do {
      d = testing::RandomWireDialogue(rng, vocab, 160, 6);
    } while (d.chunks.size() < 2);
    set.push_back({d, 1});
  }
  std::vector<double> per;
  EXPECT_NEAR(MedianPerplexity(uniform, set, &per), v, 1e-9);
  ASSERT_EQ(per.size(), 3u);
  for (double p : per) EXPECT_NEAR(p, v, 1e-9);

  EXPECT_DOUBLE_EQ(Median(std::vector<double>{10, 20, 400}), 20);
  EXPECT_EQ(CodeOf([&] { MedianPerplexity(uniform, {}); }),
            ErrorCode::kEmptySet);
}

TEST(SemanticEvalTest, SingleDialogueMedianIsItsPerplexity) {
  const Vocab vocab = testing::SmallVocab(6);
  const auto model = Unigram(vocab.extended_size());
  std::mt19937_64 rng(13);
  DedupDialogue d;
  do {
    d = testing::RandomWireDialogue(rng, vocab, 160, 6);
  } while (d.chunks.size() < 3);
  std::vector<ScoredDialogue> one = {{d, 1}};
  EXPECT_DOUBLE_EQ(MedianPerplexity(model, one), DialoguePerplexity(model, one[0]));
}

TEST(SemanticEvalTest, ReferenceBeatsShuffled) {
  DialogueStyle style;
  const auto train = GenerateCorpus(style, 60, 60000, 1).dialogues;
  const auto held = GenerateCorpus(style, 20, 30000, 2).dialogues;
  std::vector<std::vector<Token>> seqs;
  for (const auto& d : train) seqs.push_back(Flatten(ToDedup(d, 160)));
  const auto model =
      NGramModel::Train(seqs, 4, 0.1, style.vocab.extended_size());

  const int prompt_chunks = 10000 / 160;
  std::vector<ScoredDialogue> ref, shuf;
  std::mt19937_64 rng(3);
  for (const auto& d : held) {
    ref.push_back({ToDedup(d, 160), prompt_chunks});
    Dialogue s = d;
    const int from = prompt_chunks * 4;
    for (auto& ch : s.channels) {
      std::shuffle(ch.tokens.begin() + from, ch.tokens.end(), rng);
    }
    shuf.push_back({ToDedup(s, 160), prompt_chunks});
  }
  const double r = MedianPerplexity(model, ref);
  const double s = MedianPerplexity(model, shuf);
  EXPECT_LT(r, s);
  EXPECT_LT(r, 0.5 * s);
}

}  // namespace
}  // namespace duplex
