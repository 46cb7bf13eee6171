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

#ifndef DUPLEX_PREDICTOR_H_
#define DUPLEX_PREDICTOR_H_

#include <cstddef>
#include <span>
#include <vector>

#include "duplex/tokens.h"

namespace duplex {

// Next-token model over the extended vocabulary (speech units + tags).
// Implementations must be safe to query concurrently once constructed.
class Predictor {
 public:
  virtual ~Predictor() = default;

  virtual int vocab_ext() const = 0;

  // Probability vector of size vocab_ext() given the full history; models
  // with bounded memory read only the tail.
  virtual std::vector<double> NextDist(
      std::span<const Token> history) const = 0;

  virtual double Prob(std::span<const Token> history, Token next) const {
    return NextDist(history)[static_cast<std::size_t>(next)];
  }
};

// Token-weighted negative log-likelihood; partial sums from separate
// batches combine exactly.
struct LogLikelihood {
  double nll = 0.0;
  std::size_t tokens = 0;

  void Add(const LogLikelihood& other) {
    nll += other.nll;
    tokens += other.tokens;
  }
  // Throws Error(kEmptySequence) when no tokens were scored.
  double perplexity() const;
};

// Scores sequence[begin..] with sequence[..i] as the history of token i.
LogLikelihood Score(const Predictor& model, std::span<const Token> sequence,
                    std::size_t begin = 0);

// exp(mean NLL per token). Throws Error(kEmptySequence) on empty input.
double Perplexity(const Predictor& model, std::span<const Token> sequence);

}  // namespace duplex

#endif  // DUPLEX_PREDICTOR_H_
