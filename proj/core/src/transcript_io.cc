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

#include <nlohmann/json.hpp>

#include "duplex/interaction.h"

namespace duplex {

using nlohmann::ordered_json;

namespace {

const char* PolicyName(OverflowPolicy p) {
  return p == OverflowPolicy::kTruncate ? "truncate" : "error";
}

ordered_json StatsJson(const DecodeStats& s) {
  return {{"parts", s.parts}, {"capacity_hits", s.capacity_hits}};
}

}  // namespace

ordered_json DialogueJson(const DedupDialogue& d) {
  ordered_json j;
  j["frame_ms"] = d.vocab.frame_ms;
  j["vocab"] = d.vocab.size;
  j["silence"] = d.vocab.silence_tokens;
  j["chunk_ms"] = d.chunk_ms;
  j["chunks"] = d.chunks.size();
  j["tokens"] = Flatten(d);
  return j;
}

ordered_json ToJson(const InteractionTranscript& tr) {
  const auto& cfg = tr.config;
  ordered_json j;
  j["config"] = {
      {"chunk_ms", cfg.chunk_ms},
      {"latency_chunks", cfg.latency_chunks},
      {"max_chunks", cfg.max_chunks},
      {"temperature", cfg.sampler.temperature},
      {"top_k", cfg.sampler.top_k ? ordered_json(*cfg.sampler.top_k)
                                  : ordered_json(nullptr)},
      {"overflow_policy", PolicyName(cfg.overflow_policy)},
  };
  j["seed"] = cfg.sampler.seed;
  j["user"] = tr.user_kind;
  j["prompt_chunks"] = tr.prompt_chunks;

  ordered_json chunks = ordered_json::array();
  for (const auto& c : tr.chunks) {
    ordered_json est = ordered_json::array();
    for (const auto& e : c.estimates) {
      est.push_back({{"step", e.step}, {"tokens", e.tokens}});
    }
    chunks.push_back({{"index", c.index},
                      {"prompt", c.prompt},
                      {"llm_chunk", c.llm_chunk},
                      {"user_actual", c.user_actual},
                      {"user_estimated", std::move(est)},
                      {"context_snapshot_len", c.context_snapshot_len}});
  }
  j["chunks"] = std::move(chunks);

  ordered_json steps = ordered_json::array();
  for (const auto& s : tr.steps) {
    std::string prov;
    for (auto p : s.user) prov += p == UserProvenance::kActual ? 'A' : 'E';
    ordered_json step = {{"step", s.step},
                         {"user_provenance", prov},
                         {"llm_chunks", s.llm_chunks},
                         {"user_actual_known", s.user_actual_known}};
    if (cfg.record_contexts) step["context"] = s.context;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);

  j["diagnostics"] = {{"llm", StatsJson(tr.diagnostics.llm)},
                      {"user", StatsJson(tr.diagnostics.user)},
                      {"estimates", tr.diagnostics.estimates},
                      {"draws", tr.diagnostics.draws},
                      {"empty_carry_over", tr.diagnostics.empty_carry_over}};
  j["dialogue"] = DialogueJson(tr.dialogue);
  return j;
}

std::string ToJsonString(const InteractionTranscript& tr) {
  return ToJson(tr).dump(1) + "\n";
}

}  // namespace duplex
