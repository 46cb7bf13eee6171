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

#include "duplex/synth.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "duplex/errors.h"

namespace duplex {
namespace {

using Rng = std::mt19937_64;

double Uniform(Rng& rng) { return std::generate_canonical<double, 53>(rng); }

int SampleFrames(const DurationDist& d, int frame_ms, Rng& rng) {
  std::normal_distribution<double> normal(d.mean_ms, d.std_ms);
  const double ms = d.std_ms > 0.0 ? normal(rng) : d.mean_ms;
  return static_cast<int>(std::lround(ms / frame_ms));
}

int SampleDuration(const DurationDist& d, int frame_ms, Rng& rng) {
  return std::max(1, SampleFrames(d, frame_ms, rng));
}

int CheckedFrames(const DialogueStyle& style, int duration_ms) {
  if (duration_ms < 0 || duration_ms % style.vocab.frame_ms != 0) {
    throw Error(ErrorCode::kBadDuration,
                "duration " + std::to_string(duration_ms) +
                    " ms is not a non-negative multiple of the " +
                    std::to_string(style.vocab.frame_ms) + " ms frame");
  }
  return duration_ms / style.vocab.frame_ms;
}

std::array<TokenStream, kChannels> SilentStreams(const DialogueStyle& style,
                                                 int frames) {
  std::array<TokenStream, kChannels> out;
  for (int ch = 0; ch < kChannels; ++ch) {
    out[ch].speaker = ch;
    out[ch].tokens.assign(static_cast<std::size_t>(frames),
                          style.vocab.silence());
  }
  return out;
}

// Writes a voiced stretch [start, start + len) clipped to the stream and
// returns the unit index of its last frame.
int EmitVoiced(const ContentModel& content, double p_self, int speaker,
               int first_unit, int start, int len, std::vector<Token>& out,
               Rng& rng) {
  int u = first_unit;
  const int total = static_cast<int>(out.size());
  for (int f = start; f < start + len; ++f) {
    if (f > start) {
      if (Uniform(rng) >= p_self) {
        const double r = Uniform(rng);
        const auto& next = content.successors(speaker, u);
        u = next.back().first;
        for (const auto& [v, cum] : next) {
          if (r < cum) {
            u = v;
            break;
          }
        }
      }
    }
    if (f >= 0 && f < total) {
      out[static_cast<std::size_t>(f)] =
          content.units()[static_cast<std::size_t>(u)];
    }
  }
  return u;
}

}  // namespace

ContentModel::ContentModel(const DialogueStyle& style) {
  style.Validate();
  Rng rng(style.content_seed);
  std::vector<Token> candidates;
  for (Token t = 0; t < style.vocab.size; ++t) {
    if (!style.vocab.is_silence(t)) candidates.push_back(t);
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  units_.assign(candidates.begin(), candidates.begin() + style.content_units);

  const int n = style.content_units;
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int s = 0; s < kChannels; ++s) {
    successors_[s].resize(static_cast<std::size_t>(n));
    response_[s].resize(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
      std::vector<int> chosen;
      while (static_cast<int>(chosen.size()) < style.content_branching) {
        const int v = pick(rng);
        if (v != u && std::find(chosen.begin(), chosen.end(), v) ==
                          chosen.end()) {
          chosen.push_back(v);
        }
      }
      std::vector<double> w;
      double sum = 0.0;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        w.push_back(0.5 + Uniform(rng));
        sum += w.back();
      }
      double acc = 0.0;
      auto& row = successors_[s][static_cast<std::size_t>(u)];
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        acc += w[i] / sum;
        row.emplace_back(chosen[i], i + 1 == chosen.size() ? 1.0 : acc);
      }
      response_[s][static_cast<std::size_t>(u)] = pick(rng);
    }
  }
}

int ContentModel::index_of(Token unit) const {
  auto it = std::find(units_.begin(), units_.end(), unit);
  return it == units_.end() ? -1 : static_cast<int>(it - units_.begin());
}

std::uint64_t DialogueSeed(std::uint64_t corpus_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(corpus_seed),
                    static_cast<std::uint32_t>(corpus_seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> words;
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::array<TokenStream, kChannels> GenerateDialogue(const DialogueStyle& style,
                                                    int duration_ms,
                                                    std::uint64_t seed) {
  style.Validate();
  const int total = CheckedFrames(style, duration_ms);
  auto out = SilentStreams(style, total);
  if (total == 0) return out;

  const ContentModel content(style);
  const int frame_ms = style.vocab.frame_ms;
  const int sep = (style.separation_ms + frame_ms - 1) / frame_ms;
  const int n_units = static_cast<int>(content.units().size());
  Rng rng(seed);
  std::uniform_int_distribution<int> any_unit(0, n_units - 1);

  constexpr int kNever = std::numeric_limits<int>::min() / 2;
  std::array<int, kChannels> last_end = {kNever, kNever};
  std::array<std::optional<int>, kChannels> last_unit;

  int speaker = Uniform(rng) < 0.5 ? 0 : 1;
  int t = 0;
  bool turn_initial = true;
  while (t < total) {
    const int other = 1 - speaker;
    int len = SampleDuration(style.ipu, frame_ms, rng);
    // A turn that starts inside the partner's IPU must outlast it, or it
    // would read as a backchannel rather than a floor transfer.
    if (t < last_end[other]) len = std::max(len, last_end[other] - t + 1);

    int first = any_unit(rng);
    if (turn_initial && last_unit[other] &&
        Uniform(rng) < style.response_prob) {
      first = content.response(speaker, *last_unit[other]);
    }
    last_unit[speaker] = EmitVoiced(content, style.p_self, speaker, first, t,
                                    len, out[speaker].tokens, rng);
    const int end = t + len;
    last_end[speaker] = end;

    int next_speaker = speaker;
    int next_t;
    if (Uniform(rng) < style.turn_continue_prob) {
      next_t = end + SampleDuration(style.pause, frame_ms, rng);
    } else {
      next_speaker = other;
      next_t = end + SampleFrames(style.fto, frame_ms, rng);
      next_t = std::max({next_t, t + 1, last_end[other] + sep});
    }

    if (style.backchannel_prob > 0.0 &&
        Uniform(rng) < style.backchannel_prob) {
      const int b = SampleDuration(style.backchannel, frame_ms, rng);
      const int lo = std::max(t + 1, last_end[other] + sep);
      int hi = end - 1;  // exclusive end of the backchannel window
      if (next_speaker == other) hi = std::min(hi, next_t - sep);
      if (hi - lo >= b) {
        std::uniform_int_distribution<int> where(lo, hi - b);
        const int start = where(rng);
        last_unit[other] =
            EmitVoiced(content, style.p_self, other, any_unit(rng), start, b,
                       out[other].tokens, rng);
        last_end[other] = start + b;
      }
    }

    turn_initial = next_speaker != speaker;
    speaker = next_speaker;
    t = next_t;
  }
  return out;
}

std::array<TokenStream, kChannels> BuildStage2Dialogue(
    const std::vector<Turn>& turns, const DialogueStyle& style) {
  std::array<TokenStream, kChannels> out;
  out[0].speaker = 0;
  out[1].speaker = 1;
  for (const auto& turn : turns) {
    if (turn.speaker < 0 || turn.speaker >= kChannels) {
      throw Error(ErrorCode::kInvalidConfig, "turn speaker must be 0 or 1");
    }
    auto& own = out[turn.speaker].tokens;
    auto& other = out[1 - turn.speaker].tokens;
    own.insert(own.end(), turn.utterance.begin(), turn.utterance.end());
    other.insert(other.end(), turn.utterance.size(), style.vocab.silence());
  }
  return out;
}

std::array<TokenStream, kChannels> GenerateStage2Dialogue(
    const DialogueStyle& style, int duration_ms, std::uint64_t seed) {
  style.Validate();
  const int total = CheckedFrames(style, duration_ms);
  const ContentModel content(style);
  const int frame_ms = style.vocab.frame_ms;
  Rng rng(seed);
  std::uniform_int_distribution<int> any_unit(
      0, static_cast<int>(content.units().size()) - 1);

  std::vector<Turn> turns;
  int frames = 0;
  int speaker = Uniform(rng) < 0.5 ? 0 : 1;
  while (frames < total) {
    Turn turn;
    turn.speaker = speaker;
    const int len = SampleDuration(style.ipu, frame_ms, rng);
    turn.utterance.assign(static_cast<std::size_t>(len), 0);
    EmitVoiced(content, style.p_self, speaker, any_unit(rng), 0, len,
               turn.utterance, rng);
    const int tail = std::max(1, SampleFrames(style.fto, frame_ms, rng));
    turn.utterance.insert(turn.utterance.end(), static_cast<std::size_t>(tail),
                          style.vocab.silence());
    frames += static_cast<int>(turn.utterance.size());
    turns.push_back(std::move(turn));
    speaker = 1 - speaker;
  }
  auto out = BuildStage2Dialogue(turns, style);
  for (auto& stream : out) {
    stream.tokens.resize(static_cast<std::size_t>(total),
                         style.vocab.silence());
  }
  return out;
}

SynthCorpus GenerateCorpus(const DialogueStyle& style, int count,
                           int duration_ms, std::uint64_t seed,
                           CorpusRegime regime, const std::string& id_prefix) {
  style.Validate();
  CheckedFrames(style, duration_ms);
  if (count < 0) {
    throw Error(ErrorCode::kInvalidConfig, "dialogue count must be >= 0");
  }
  SynthCorpus corpus;
  corpus.style = style;
  corpus.seed = seed;
  corpus.dialogues.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto s = DialogueSeed(seed, static_cast<std::uint64_t>(i));
    Dialogue& d = corpus.dialogues[static_cast<std::size_t>(i)];
    d.id = id_prefix + std::to_string(i);
    d.vocab = style.vocab;
    d.channels = regime == CorpusRegime::kTurnBased
                     ? GenerateStage2Dialogue(style, duration_ms, s)
                     : GenerateDialogue(style, duration_ms, s);
  }
  return corpus;
}

}  // namespace duplex
