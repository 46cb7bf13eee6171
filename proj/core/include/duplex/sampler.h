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

#ifndef DUPLEX_SAMPLER_H_
#define DUPLEX_SAMPLER_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include "duplex/predictor.h"

namespace duplex {

struct SamplerConfig {
  double temperature = 1.0;
  std::optional<int> top_k;
  std::uint64_t seed = 0;

  // Throws Error(kInvalidConfig) unless temperature > 0 and
  // 1 <= top_k <= vocab_ext.
  void Validate(int vocab_ext) const;
};

// Owns the random stream of one generation run. Every call to Sample
// consumes exactly one uniform variate, so the n-th draw depends only on
// (seed, n) and the distribution passed in.
class Sampler {
 public:
  explicit Sampler(const SamplerConfig& config);

  // Draws from `dist` restricted to entries with allowed[i] != 0 (all when
  // `allowed` is empty), after temperature scaling and top-k truncation.
  Token Sample(std::span<const double> dist,
               std::span<const std::uint8_t> allowed = {});

  std::uint64_t draws() const { return draws_; }
  const SamplerConfig& config() const { return config_; }

 private:
  SamplerConfig config_;
  std::mt19937_64 rng_;
  std::uint64_t draws_ = 0;
};

Token SampleNext(const Predictor& model, std::span<const Token> history,
                 Sampler& sampler);

}  // namespace duplex

#endif  // DUPLEX_SAMPLER_H_
