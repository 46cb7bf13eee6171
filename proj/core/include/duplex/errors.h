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

#ifndef DUPLEX_ERRORS_H_
#define DUPLEX_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace duplex {

enum class ErrorCode {
  kLengthMismatch,
  kBadChunkSize,
  kChunkOverflow,
  kMalformedSequence,
  kMalformedGeneration,
  kEmptyCorpus,
  kEmptySequence,
  kEmptySet,
  kBadDuration,
  kSourceExhausted,
  kDegenerateInput,
  kNoPairs,
  kInvalidConfig,
  kVersionMismatch,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as Error; code() identifies the
// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace duplex

#endif  // DUPLEX_ERRORS_H_
