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

#include "duplex/interaction.h"

#include <algorithm>
#include <optional>

#include "duplex/errors.h"

namespace duplex {

void InteractionConfig::Validate(const Vocab& vocab) const {
  vocab.Validate();
  vocab.FramesPerChunk(chunk_ms);
  if (latency_chunks < 0) {
    throw Error(ErrorCode::kInvalidConfig, "latency_chunks must be >= 0");
  }
  if (max_chunks < 0) {
    throw Error(ErrorCode::kInvalidConfig, "max_chunks must be >= 0");
  }
  sampler.Validate(vocab.extended_size());
}

namespace {

// One side of the protocol. `own` holds the agent's chunks, `other` the
// partner's chunks as they actually happened; the agent only treats
// other[i] as known once i < step - latency.
class Agent {
 public:
  Agent(ChunkGenerator& gen, int latency) : gen_(gen), latency_(latency) {}

  // Context before generating own chunk `step`. Estimates for the unknown
  // partner chunks are sampled into `estimates` (one per window chunk).
  std::vector<Token> Context(const std::vector<std::vector<Token>>& own,
                             const std::vector<std::vector<Token>>& other,
                             int step,
                             std::vector<std::vector<Token>>* estimates) {
    const Vocab& v = gen_.vocab();
    const int known = std::max(0, step - latency_);
    while (prefix_chunks_ < known) {
      const auto& a = own[prefix_chunks_];
      const auto& b = other[prefix_chunks_];
      prefix_.push_back(v.tag_s0());
      prefix_.insert(prefix_.end(), a.begin(), a.end());
      if (!a.empty()) last_[0] = a.back();
      if (!b.empty()) {
        prefix_.push_back(v.tag_s1());
        prefix_.insert(prefix_.end(), b.begin(), b.end());
        last_[1] = b.back();
      }
      ++prefix_chunks_;
    }
    std::vector<Token> context = prefix_;
    window_last_ = last_;
    for (int i = known; i < step; ++i) {
      const auto& a = own[i];
      context.push_back(v.tag_s0());
      context.insert(context.end(), a.begin(), a.end());
      if (!a.empty()) window_last_[0] = a.back();
      auto est = gen_.GenerateOther(context, window_last_[1]);
      if (!est.empty()) window_last_[1] = est.back();
      estimates->push_back(std::move(est));
    }
    return context;
  }

  std::vector<Token> Generate(std::vector<Token>& context) {
    return gen_.GenerateOwn(context, window_last_[0]).units;
  }

 private:
  ChunkGenerator& gen_;
  int latency_;
  std::vector<Token> prefix_;
  int prefix_chunks_ = 0;
  std::array<std::optional<Token>, kChannels> last_;
  std::array<std::optional<Token>, kChannels> window_last_;
};

void CheckScript(const ScriptedUser& script, const DedupDialogue& prompt,
                 int needed, int m) {
  if (static_cast<int>(script.chunks.size()) < needed) {
    throw Error(ErrorCode::kSourceExhausted,
                "scripted user has " + std::to_string(script.chunks.size()) +
                    " chunks, " + std::to_string(needed) + " needed");
  }
  std::optional<Token> prev = LastUnits(Flatten(prompt), prompt.vocab)[1];
  for (int i = 0; i < needed; ++i) {
    const auto& c = script.chunks[i];
    if (static_cast<int>(c.size()) > m) {
      throw Error(ErrorCode::kChunkOverflow,
                  "scripted chunk " + std::to_string(i) + " exceeds " +
                      std::to_string(m) + " units");
    }
    for (Token t : c) {
      if (!prompt.vocab.is_unit(t) || (prev && *prev == t)) {
        throw Error(ErrorCode::kMalformedSequence,
                    "scripted chunk " + std::to_string(i) +
                        " is not a deduplicated unit list");
      }
      prev = t;
    }
  }
}

}  // namespace

InteractionTranscript SimulateInteraction(const Predictor& llm,
                                          const UserSource& user,
                                          const DedupDialogue& prompt,
                                          const InteractionConfig& config) {
  const Vocab& vocab = prompt.vocab;
  config.Validate(vocab);
  if (prompt.chunk_ms != config.chunk_ms) {
    throw Error(ErrorCode::kInvalidConfig,
                "prompt chunk size differs from the configured chunk size");
  }
  // Rejects prompts that do not parse.
  Parse(Flatten(prompt), vocab, prompt.chunk_ms);
  const int p = static_cast<int>(prompt.chunks.size());
  if (config.max_chunks < p) {
    throw Error(ErrorCode::kInvalidConfig,
                "max_chunks is shorter than the prompt");
  }
  const int m = vocab.FramesPerChunk(config.chunk_ms);
  const auto* scripted = std::get_if<ScriptedUser>(&user);
  const auto* modeled = std::get_if<ModelUser>(&user);
  if (scripted) CheckScript(*scripted, prompt, config.max_chunks - p, m);
  if (modeled && modeled->model == nullptr) {
    throw Error(ErrorCode::kInvalidConfig, "user model is missing");
  }

  InteractionTranscript tr;
  tr.config = config;
  tr.user_kind = scripted ? "scripted" : "model";
  tr.prompt_chunks = p;

  Sampler sampler(config.sampler);
  const auto policy = config.overflow_policy;
  ChunkGenerator llm_gen(llm, vocab, config.chunk_ms, sampler, policy,
                         &tr.diagnostics.llm);
  Agent llm_agent(llm_gen, config.latency_chunks);
  std::optional<ChunkGenerator> user_gen;
  std::optional<Agent> user_agent;
  if (modeled) {
    user_gen.emplace(*modeled->model, vocab, config.chunk_ms, sampler, policy,
                     &tr.diagnostics.user);
    user_agent.emplace(*user_gen, config.latency_chunks);
  }

  std::vector<std::vector<Token>> llm_chunks, user_chunks;
  for (int i = 0; i < p; ++i) {
    llm_chunks.push_back(prompt.chunks[i].novel[0]);
    user_chunks.push_back(prompt.chunks[i].novel[1]);
    ChunkRecord rec;
    rec.index = i;
    rec.prompt = true;
    rec.llm_chunk = prompt.chunks[i].novel[0];
    rec.user_actual = prompt.chunks[i].novel[1];
    tr.chunks.push_back(std::move(rec));
  }

  for (int step = p; step < config.max_chunks; ++step) {
    ChunkRecord rec;
    rec.index = step;
    StepTrace trace;
    trace.step = step;

    std::vector<std::vector<Token>> estimates;
    auto context = llm_agent.Context(llm_chunks, user_chunks, step, &estimates);
    const int known = step - static_cast<int>(estimates.size());
    for (int i = 0; i < step; ++i) {
      trace.user.push_back(i < known ? UserProvenance::kActual
                                     : UserProvenance::kEstimated);
    }
    for (std::size_t k = 0; k < estimates.size(); ++k) {
      tr.chunks[known + k].estimates.push_back({step, estimates[k]});
    }
    tr.diagnostics.estimates += static_cast<int>(estimates.size());
    rec.context_snapshot_len = context.size();
    if (config.record_contexts) trace.context = context;
    rec.llm_chunk = llm_agent.Generate(context);

    if (scripted) {
      rec.user_actual = scripted->chunks[step - p];
    } else {
      // The user's own voice is channel 0 of its view.
      std::vector<std::vector<Token>> user_estimates;
      auto user_context = user_agent->Context(user_chunks, llm_chunks, step,
                                              &user_estimates);
      tr.diagnostics.estimates += static_cast<int>(user_estimates.size());
      rec.user_actual = user_agent->Generate(user_context);
    }
    llm_chunks.push_back(rec.llm_chunk);
    user_chunks.push_back(rec.user_actual);

    trace.llm_chunks = step + 1;
    trace.user_actual_known = std::max(0, step + 1 - config.latency_chunks);
    tr.chunks.push_back(std::move(rec));
    tr.steps.push_back(std::move(trace));
  }

  tr.dialogue.vocab = vocab;
  tr.dialogue.chunk_ms = config.chunk_ms;
  for (int i = 0; i < config.max_chunks; ++i) {
    DedupChunk c;
    c.novel[0] = llm_chunks[i];
    c.novel[1] = user_chunks[i];
    tr.dialogue.chunks.push_back(std::move(c));
  }
  InterpolationReport report;
  Interpolate(tr.dialogue, &report);
  tr.diagnostics.empty_carry_over = report.empty_carry_over;
  tr.diagnostics.draws = sampler.draws();
  return tr;
}

}  // namespace duplex
