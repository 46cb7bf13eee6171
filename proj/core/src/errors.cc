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

#include "duplex/errors.h"

namespace duplex {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kBadChunkSize: return "BadChunkSize";
    case ErrorCode::kChunkOverflow: return "ChunkOverflow";
    case ErrorCode::kMalformedSequence: return "MalformedSequence";
    case ErrorCode::kMalformedGeneration: return "MalformedGeneration";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kBadDuration: return "BadDuration";
    case ErrorCode::kSourceExhausted: return "SourceExhausted";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kNoPairs: return "NoPairs";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace duplex
