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

#include "duplex/corpus_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "duplex/errors.h"

namespace duplex {

using nlohmann::ordered_json;

std::string ToJsonLine(const Dialogue& dialogue) {
  ordered_json j;
  j["id"] = dialogue.id;
  j["frame_ms"] = dialogue.vocab.frame_ms;
  j["vocab"] = dialogue.vocab.size;
  j["silence"] = dialogue.vocab.silence_tokens;
  j["channels"] = ordered_json::array(
      {dialogue.channels[0].tokens, dialogue.channels[1].tokens});
  return j.dump();
}

Dialogue FromJsonLine(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
    Dialogue d;
    d.id = j.at("id").get<std::string>();
    d.vocab.frame_ms = j.at("frame_ms").get<int>();
    d.vocab.size = j.at("vocab").get<int>();
    d.vocab.silence_tokens = j.at("silence").get<std::vector<Token>>();
    const auto& channels = j.at("channels");
    if (!channels.is_array() || channels.size() != kChannels) {
      throw Error(ErrorCode::kIo, "dialogue '" + d.id +
                                      "' must have exactly two channels");
    }
    for (int ch = 0; ch < kChannels; ++ch) {
      d.channels[ch].speaker = ch;
      d.channels[ch].tokens = channels[ch].get<std::vector<Token>>();
    }
    d.vocab.Validate();
    if (d.channels[0].tokens.size() != d.channels[1].tokens.size()) {
      throw Error(ErrorCode::kLengthMismatch,
                  "dialogue '" + d.id + "' has unequal channel lengths");
    }
    for (const auto& stream : d.channels) {
      for (Token t : stream.tokens) {
        if (!d.vocab.is_unit(t)) {
          throw Error(ErrorCode::kIo, "dialogue '" + d.id + "' has token " +
                                          std::to_string(t) +
                                          " outside the vocabulary");
        }
      }
    }
    return d;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("bad corpus line: ") + e.what());
  }
}

void WriteCorpus(std::ostream& out, const std::vector<Dialogue>& corpus) {
  for (const auto& d : corpus) out << ToJsonLine(d) << '\n';
}

std::vector<Dialogue> ReadCorpus(std::istream& in) {
  std::vector<Dialogue> corpus;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    corpus.push_back(FromJsonLine(line));
  }
  return corpus;
}

std::vector<Dialogue> ReadCorpusFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus " + path);
  return ReadCorpus(in);
}

void WriteCorpusFile(const std::string& path,
                     const std::vector<Dialogue>& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  WriteCorpus(out, corpus);
}

void WriteFlattened(std::ostream& out,
                    const std::vector<std::vector<Token>>& sequences) {
  for (const auto& seq : sequences) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i) out << ' ';
      out << seq[i];
    }
    out << '\n';
  }
}

std::vector<std::vector<Token>> ReadFlattened(std::istream& in) {
  std::vector<std::vector<Token>> sequences;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<Token> seq;
    Token t;
    while (fields >> t) seq.push_back(t);
    if (!fields.eof()) {
      throw Error(ErrorCode::kIo, "non-integer field in flattened sequence");
    }
    sequences.push_back(std::move(seq));
  }
  return sequences;
}

Dialogue SliceFrames(const Dialogue& dialogue, int begin, int end) {
  const int n = dialogue.frames();
  if (begin < 0 || end > n || begin > end) {
    throw Error(ErrorCode::kBadDuration, "frame slice out of range");
  }
  Dialogue out = dialogue;
  for (auto& stream : out.channels) {
    stream.tokens.assign(stream.tokens.begin() + begin,
                         stream.tokens.begin() + end);
  }
  return out;
}

}  // namespace duplex
