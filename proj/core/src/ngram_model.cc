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

#include "duplex/ngram_model.h"

#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "duplex/errors.h"

namespace duplex {

using nlohmann::ordered_json;

NGramModel::NGramModel(int order, double alpha, int vocab_ext)
    : order_(order), alpha_(alpha), vocab_ext_(vocab_ext) {
  if (order < 1) {
    throw Error(ErrorCode::kInvalidConfig, "n-gram order must be >= 1");
  }
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "alpha must be > 0");
  }
  if (vocab_ext < 1) {
    throw Error(ErrorCode::kInvalidConfig, "vocab_ext must be positive");
  }
}

NGramModel NGramModel::Train(const std::vector<std::vector<Token>>& corpus,
                             int order, double alpha, int vocab_ext) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "training corpus is empty");
  }
  NGramModel model(order, alpha, vocab_ext);
  for (const auto& seq : corpus) model.AddSequence(seq);
  return model;
}

void NGramModel::AddSequence(std::span<const Token> sequence) {
  for (Token t : sequence) {
    if (t < 0 || t >= vocab_ext_) {
      throw Error(ErrorCode::kInvalidConfig,
                  "token " + std::to_string(t) + " outside [0, " +
                      std::to_string(vocab_ext_) + ")");
    }
  }
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    Row& row = rows_[ContextKey(sequence.first(i))];
    ++row.total;
    ++row.next[sequence[i]];
  }
}

std::vector<Token> NGramModel::ContextKey(
    std::span<const Token> history) const {
  const std::size_t n = static_cast<std::size_t>(order_);
  std::vector<Token> key(n, begin_marker());
  const std::size_t take = std::min(n, history.size());
  std::copy(history.end() - static_cast<std::ptrdiff_t>(take), history.end(),
            key.end() - static_cast<std::ptrdiff_t>(take));
  return key;
}

const NGramModel::Row* NGramModel::Find(
    std::span<const Token> history) const {
  auto it = rows_.find(ContextKey(history));
  return it == rows_.end() ? nullptr : &it->second;
}

std::vector<double> NGramModel::NextDist(
    std::span<const Token> history) const {
  const Row* row = Find(history);
  const double total = row ? static_cast<double>(row->total) : 0.0;
  const double denom = total + alpha_ * vocab_ext_;
  std::vector<double> dist(static_cast<std::size_t>(vocab_ext_),
                           alpha_ / denom);
  if (row) {
    for (const auto& [t, c] : row->next) {
      dist[static_cast<std::size_t>(t)] =
          (static_cast<double>(c) + alpha_) / denom;
    }
  }
  return dist;
}

double NGramModel::Prob(std::span<const Token> history, Token next) const {
  const Row* row = Find(history);
  if (!row) return 1.0 / vocab_ext_;
  auto it = row->next.find(next);
  const double c = it == row->next.end() ? 0.0 : static_cast<double>(it->second);
  return (c + alpha_) / (static_cast<double>(row->total) + alpha_ * vocab_ext_);
}

std::uint64_t NGramModel::ContextCount(std::span<const Token> history) const {
  const Row* row = Find(history);
  return row ? row->total : 0;
}

std::uint64_t NGramModel::Count(std::span<const Token> history,
                                Token next) const {
  const Row* row = Find(history);
  if (!row) return 0;
  auto it = row->next.find(next);
  return it == row->next.end() ? 0 : it->second;
}

ordered_json NGramModel::ToJson() const {
  ordered_json j;
  j["version"] = kFormatVersion;
  j["order"] = order_;
  j["alpha"] = alpha_;
  j["vocab_ext"] = vocab_ext_;
  ordered_json counts = ordered_json::object();
  for (const auto& [key, row] : rows_) {
    std::string ctx;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) ctx += ' ';
      ctx += std::to_string(key[i]);
    }
    ordered_json next = ordered_json::object();
    for (const auto& [t, c] : row.next) next[std::to_string(t)] = c;
    counts[ctx] = std::move(next);
  }
  j["counts"] = std::move(counts);
  return j;
}

NGramModel NGramModel::FromJson(const ordered_json& j) {
  try {
    const int version = j.at("version").get<int>();
    if (version != kFormatVersion) {
      throw Error(ErrorCode::kVersionMismatch,
                  "model file version " + std::to_string(version) +
                      " is not supported (expected " +
                      std::to_string(kFormatVersion) + ")");
    }
    NGramModel model(j.at("order").get<int>(), j.at("alpha").get<double>(),
                     j.at("vocab_ext").get<int>());
    for (const auto& [ctx, next] : j.at("counts").items()) {
      std::vector<Token> key;
      std::istringstream fields(ctx);
      Token t;
      while (fields >> t) key.push_back(t);
      if (key.size() != static_cast<std::size_t>(model.order_)) {
        throw Error(ErrorCode::kIo, "context '" + ctx +
                                        "' does not match the model order");
      }
      Row& row = model.rows_[key];
      for (const auto& [tok, count] : next.items()) {
        const auto c = count.get<std::uint64_t>();
        row.next[std::stoi(tok)] = c;
        row.total += c;
      }
    }
    return model;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("bad model file: ") + e.what());
  } catch (const std::logic_error& e) {
    // std::stoi on a malformed token key.
    throw Error(ErrorCode::kIo, std::string("bad model file: ") + e.what());
  }
}

}  // namespace duplex
