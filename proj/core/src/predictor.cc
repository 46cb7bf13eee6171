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

#include "duplex/predictor.h"

#include <cmath>
#include <limits>

#include "duplex/errors.h"

namespace duplex {

double LogLikelihood::perplexity() const {
  if (tokens == 0) {
    throw Error(ErrorCode::kEmptySequence, "no tokens to score");
  }
  return std::exp(nll / static_cast<double>(tokens));
}

LogLikelihood Score(const Predictor& model, std::span<const Token> sequence,
                    std::size_t begin) {
  LogLikelihood ll;
  for (std::size_t i = begin; i < sequence.size(); ++i) {
    const double p = model.Prob(sequence.first(i), sequence[i]);
    ll.nll += p > 0.0 ? -std::log(p) : std::numeric_limits<double>::infinity();
    ++ll.tokens;
  }
  return ll;
}

double Perplexity(const Predictor& model, std::span<const Token> sequence) {
  if (sequence.empty()) {
    throw Error(ErrorCode::kEmptySequence, "perplexity of an empty sequence");
  }
  return Score(model, sequence).perplexity();
}

}  // namespace duplex
