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

#ifndef DUPLEX_NGRAM_MODEL_H_
#define DUPLEX_NGRAM_MODEL_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "duplex/predictor.h"

namespace duplex {

// Add-alpha smoothed n-gram model. `order` is the context length: the
// distribution of token i depends on tokens i-order..i-1, with histories
// shorter than that left-padded with an internal begin marker (id
// vocab_ext).
//
//   P(t | c) = (count(c, t) + alpha) / (count(c) + alpha * vocab_ext)
class NGramModel final : public Predictor {
 public:
  static constexpr int kFormatVersion = 1;

  NGramModel(int order, double alpha, int vocab_ext);

  // Throws Error(kEmptyCorpus) when the corpus has no sequences and
  // Error(kInvalidConfig) for order < 1, alpha <= 0 or ids outside
  // [0, vocab_ext).
  static NGramModel Train(const std::vector<std::vector<Token>>& corpus,
                          int order, double alpha, int vocab_ext);

  void AddSequence(std::span<const Token> sequence);

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  int vocab_ext() const override { return vocab_ext_; }
  Token begin_marker() const { return vocab_ext_; }

  std::vector<double> NextDist(std::span<const Token> history) const override;
  double Prob(std::span<const Token> history, Token next) const override;

  std::uint64_t ContextCount(std::span<const Token> history) const;
  std::uint64_t Count(std::span<const Token> history, Token next) const;
  std::size_t context_types() const { return rows_.size(); }

  // {"version":1,"order":n,"alpha":a,"vocab_ext":V,"counts":{"c1 c2":{"t":k}}}
  nlohmann::ordered_json ToJson() const;
  // Throws Error(kVersionMismatch) for any version other than 1.
  static NGramModel FromJson(const nlohmann::ordered_json& j);

  bool operator==(const NGramModel& o) const {
    return order_ == o.order_ && alpha_ == o.alpha_ &&
           vocab_ext_ == o.vocab_ext_ && rows_ == o.rows_;
  }

 private:
  struct Row {
    std::uint64_t total = 0;
    std::map<Token, std::uint64_t> next;
    bool operator==(const Row&) const = default;
  };

  std::vector<Token> ContextKey(std::span<const Token> history) const;
  const Row* Find(std::span<const Token> history) const;

  int order_;
  double alpha_;
  int vocab_ext_;
  std::map<std::vector<Token>, Row> rows_;
};

}  // namespace duplex

#endif  // DUPLEX_NGRAM_MODEL_H_
