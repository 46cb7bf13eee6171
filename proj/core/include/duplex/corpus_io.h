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

#ifndef DUPLEX_CORPUS_IO_H_
#define DUPLEX_CORPUS_IO_H_

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "duplex/tokens.h"

namespace duplex {

// One two-channel dialogue at full frame rate.
struct Dialogue {
  std::string id;
  Vocab vocab;
  std::array<TokenStream, kChannels> channels;

  int frames() const { return static_cast<int>(channels[0].tokens.size()); }
  bool operator==(const Dialogue&) const = default;
};

// JSON Lines corpus, one dialogue per line:
//   {"id":..,"frame_ms":..,"vocab":..,"silence":[..],"channels":[[..],[..]]}
std::string ToJsonLine(const Dialogue& dialogue);
Dialogue FromJsonLine(const std::string& line);

void WriteCorpus(std::ostream& out, const std::vector<Dialogue>& corpus);
std::vector<Dialogue> ReadCorpus(std::istream& in);
std::vector<Dialogue> ReadCorpusFile(const std::string& path);
void WriteCorpusFile(const std::string& path,
                     const std::vector<Dialogue>& corpus);

// Training dumps: one flattened sequence per line, space-separated ids.
void WriteFlattened(std::ostream& out,
                    const std::vector<std::vector<Token>>& sequences);
std::vector<std::vector<Token>> ReadFlattened(std::istream& in);

// Returns a copy restricted to frames [begin, end).
Dialogue SliceFrames(const Dialogue& dialogue, int begin, int end);

}  // namespace duplex

#endif  // DUPLEX_CORPUS_IO_H_
