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

#include "duplex/sampler.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "duplex/errors.h"

namespace duplex {

void SamplerConfig::Validate(int vocab_ext) const {
  if (!(temperature > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "temperature must be > 0");
  }
  if (top_k && (*top_k < 1 || *top_k > vocab_ext)) {
    throw Error(ErrorCode::kInvalidConfig,
                "top_k must lie in [1, " + std::to_string(vocab_ext) + "]");
  }
}

Sampler::Sampler(const SamplerConfig& config)
    : config_(config), rng_(config.seed) {}

Token Sampler::Sample(std::span<const double> dist,
                      std::span<const std::uint8_t> allowed) {
  const double u = std::generate_canonical<double, 53>(rng_);
  ++draws_;

  const std::size_t n = dist.size();
  auto is_allowed = [&](std::size_t i) {
    return allowed.empty() || allowed[i] != 0;
  };

  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (is_allowed(i) && dist[i] > 0.0) {
      max_log = std::max(max_log, std::log(dist[i]));
    }
  }

  std::vector<double> weight(n, 0.0);
  if (std::isinf(max_log)) {
    // No allowed entry carries mass: fall back to uniform over the mask.
    for (std::size_t i = 0; i < n; ++i) weight[i] = is_allowed(i) ? 1.0 : 0.0;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (is_allowed(i) && dist[i] > 0.0) {
        weight[i] =
            std::exp((std::log(dist[i]) - max_log) / config_.temperature);
      }
    }
  }

  if (config_.top_k && static_cast<std::size_t>(*config_.top_k) < n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return weight[a] > weight[b];
                     });
    for (std::size_t r = static_cast<std::size_t>(*config_.top_k); r < n; ++r) {
      weight[order[r]] = 0.0;
    }
  }

  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kMalformedGeneration,
                "no token is allowed at this position");
  }
  const double target = u * total;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (weight[i] <= 0.0) continue;
    acc += weight[i];
    last = i;
    if (target < acc) return static_cast<Token>(i);
  }
  return static_cast<Token>(last);
}

Token SampleNext(const Predictor& model, std::span<const Token> history,
                 Sampler& sampler) {
  const auto dist = model.NextDist(history);
  return sampler.Sample(dist);
}

}  // namespace duplex
