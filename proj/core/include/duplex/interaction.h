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

#ifndef DUPLEX_INTERACTION_H_
#define DUPLEX_INTERACTION_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "duplex/decoder.h"
#include "duplex/predictor.h"
#include "duplex/sampler.h"
#include "duplex/tokens.h"

namespace duplex {

struct InteractionConfig {
  int chunk_ms = 160;
  int latency_chunks = 1;
  // Total chunks of the final dialogue, prompt included.
  int max_chunks = 0;
  SamplerConfig sampler;
  OverflowPolicy overflow_policy = OverflowPolicy::kTruncate;
  // Keep a copy of every generation context in the step traces.
  bool record_contexts = false;

  // Throws Error(kInvalidConfig) or Error(kBadChunkSize).
  void Validate(const Vocab& vocab) const;
};

// Channel-1 chunks that follow the prompt, one per generated chunk.
struct ScriptedUser {
  std::vector<std::vector<Token>> chunks;
};

// A second model speaking as channel 1. It sees the dialogue with the
// channels swapped and runs the same latency protocol.
struct ModelUser {
  const Predictor* model = nullptr;
};

using UserSource = std::variant<ScriptedUser, ModelUser>;

struct UserEstimate {
  int step = 0;
  std::vector<Token> tokens;
  bool operator==(const UserEstimate&) const = default;
};

struct ChunkRecord {
  int index = 0;
  bool prompt = false;
  std::vector<Token> llm_chunk;
  std::vector<Token> user_actual;
  // Every estimate of this user chunk, in step order.
  std::vector<UserEstimate> estimates;
  // Context length when this LLM chunk was generated (0 for prompt chunks).
  std::size_t context_snapshot_len = 0;
  bool operator==(const ChunkRecord&) const = default;
};

enum class UserProvenance { kActual, kEstimated };

struct StepTrace {
  int step = 0;  // index of the LLM chunk generated in this step
  // Provenance of user chunks 0..step-1 in the LLM context.
  std::vector<UserProvenance> user;
  int llm_chunks = 0;         // LLM chunks known after the step
  int user_actual_known = 0;  // user chunks arrived after the step
  std::vector<Token> context;  // only with record_contexts
  bool operator==(const StepTrace&) const = default;
};

struct InteractionDiagnostics {
  DecodeStats llm;
  DecodeStats user;
  int estimates = 0;
  std::uint64_t draws = 0;
  int empty_carry_over = 0;
  bool operator==(const InteractionDiagnostics&) const = default;
};

struct InteractionTranscript {
  InteractionConfig config;
  std::string user_kind;  // "scripted" or "model"
  int prompt_chunks = 0;
  std::vector<ChunkRecord> chunks;
  std::vector<StepTrace> steps;
  DedupDialogue dialogue;
  InteractionDiagnostics diagnostics;
};

// Runs the chunk-synchronous protocol from `prompt` to config.max_chunks.
// While generating LLM chunk j, user chunks j-L..j-1 are not yet known to
// the LLM and are re-estimated from its own context. Throws
// Error(kSourceExhausted) when a scripted user runs out of chunks.
InteractionTranscript SimulateInteraction(const Predictor& llm,
                                          const UserSource& user,
                                          const DedupDialogue& prompt,
                                          const InteractionConfig& config);

// {"frame_ms", "vocab", "silence", "chunk_ms", "chunks", "tokens"} with the
// flattened sequence under "tokens".
nlohmann::ordered_json DialogueJson(const DedupDialogue& dialogue);
nlohmann::ordered_json ToJson(const InteractionTranscript& transcript);
std::string ToJsonString(const InteractionTranscript& transcript);

}  // namespace duplex

#endif  // DUPLEX_INTERACTION_H_
