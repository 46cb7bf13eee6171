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

#include "duplex/style.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "duplex/errors.h"

namespace duplex {
namespace {

[[noreturn]] void Invalid(const std::string& why) {
  throw Error(ErrorCode::kInvalidConfig, "style: " + why);
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    Invalid("bad value '" + text + "' for " + key);
  }
  return value;
}

using Setter = std::function<void(DialogueStyle&, const std::string&,
                                  const std::string&)>;

template <typename T>
Setter Field(T DialogueStyle::*member) {
  return [member](DialogueStyle& s, const std::string& k,
                  const std::string& v) { s.*member = ParseNumber<T>(k, v); };
}

Setter DurationField(DurationDist DialogueStyle::*member, bool mean) {
  return [member, mean](DialogueStyle& s, const std::string& k,
                        const std::string& v) {
    (mean ? (s.*member).mean_ms : (s.*member).std_ms) =
        ParseNumber<double>(k, v);
  };
}

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> setters = {
      {"vocab", [](DialogueStyle& s, const std::string& k,
                   const std::string& v) {
         s.vocab.size = ParseNumber<int>(k, v);
       }},
      {"frame_ms", [](DialogueStyle& s, const std::string& k,
                      const std::string& v) {
         s.vocab.frame_ms = ParseNumber<int>(k, v);
       }},
      {"silence", [](DialogueStyle& s, const std::string& k,
                     const std::string& v) {
         s.vocab.silence_tokens.clear();
         std::stringstream list(v);
         std::string item;
         while (std::getline(list, item, ',')) {
           s.vocab.silence_tokens.push_back(ParseNumber<Token>(k, Trim(item)));
         }
       }},
      {"ipu_mean_ms", DurationField(&DialogueStyle::ipu, true)},
      {"ipu_std_ms", DurationField(&DialogueStyle::ipu, false)},
      {"pause_mean_ms", DurationField(&DialogueStyle::pause, true)},
      {"pause_std_ms", DurationField(&DialogueStyle::pause, false)},
      {"fto_mean_ms", DurationField(&DialogueStyle::fto, true)},
      {"fto_std_ms", DurationField(&DialogueStyle::fto, false)},
      {"turn_continue_prob", Field(&DialogueStyle::turn_continue_prob)},
      {"backchannel_prob", Field(&DialogueStyle::backchannel_prob)},
      {"backchannel_mean_ms", DurationField(&DialogueStyle::backchannel, true)},
      {"backchannel_std_ms", DurationField(&DialogueStyle::backchannel, false)},
      {"separation_ms", Field(&DialogueStyle::separation_ms)},
      {"p_self", Field(&DialogueStyle::p_self)},
      {"content_units", Field(&DialogueStyle::content_units)},
      {"content_branching", Field(&DialogueStyle::content_branching)},
      {"response_prob", Field(&DialogueStyle::response_prob)},
      {"content_seed", Field(&DialogueStyle::content_seed)},
  };
  return setters;
}

void CheckProbability(const char* name, double p) {
  if (!(p >= 0.0 && p <= 1.0)) Invalid(std::string(name) + " must be in [0,1]");
}

void CheckDuration(const char* name, const DurationDist& d, bool signed_mean) {
  if (!signed_mean && !(d.mean_ms > 0.0)) {
    Invalid(std::string(name) + " mean must be > 0");
  }
  if (!(d.std_ms >= 0.0)) Invalid(std::string(name) + " std must be >= 0");
}

}  // namespace

void DialogueStyle::Validate() const {
  vocab.Validate();
  CheckDuration("ipu", ipu, false);
  CheckDuration("pause", pause, false);
  CheckDuration("fto", fto, true);
  CheckDuration("backchannel", backchannel, false);
  CheckProbability("turn_continue_prob", turn_continue_prob);
  CheckProbability("backchannel_prob", backchannel_prob);
  CheckProbability("response_prob", response_prob);
  if (!(p_self >= 0.0 && p_self < 1.0)) Invalid("p_self must be in [0,1)");
  if (separation_ms < 0) Invalid("separation_ms must be >= 0");
  const int usable =
      vocab.size - static_cast<int>(vocab.silence_tokens.size());
  if (content_units < 2 || content_units > usable) {
    Invalid("content_units must be in [2, " + std::to_string(usable) + "]");
  }
  if (content_branching < 1 || content_branching >= content_units) {
    Invalid("content_branching must be in [1, content_units)");
  }
}

DialogueStyle ParseStyle(std::istream& in) {
  DialogueStyle style;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      Invalid("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    auto it = Setters().find(key);
    if (it == Setters().end()) Invalid("unknown key '" + key + "'");
    it->second(style, key, value);
  }
  style.Validate();
  return style;
}

DialogueStyle LoadStyleFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open style file " + path);
  return ParseStyle(in);
}

std::string FormatStyle(const DialogueStyle& s) {
  std::ostringstream out;
  out << "vocab = " << s.vocab.size << '\n'
      << "frame_ms = " << s.vocab.frame_ms << '\n'
      << "silence = ";
  for (std::size_t i = 0; i < s.vocab.silence_tokens.size(); ++i) {
    out << (i ? "," : "") << s.vocab.silence_tokens[i];
  }
  out << '\n'
      << "ipu_mean_ms = " << s.ipu.mean_ms << '\n'
      << "ipu_std_ms = " << s.ipu.std_ms << '\n'
      << "pause_mean_ms = " << s.pause.mean_ms << '\n'
      << "pause_std_ms = " << s.pause.std_ms << '\n'
      << "fto_mean_ms = " << s.fto.mean_ms << '\n'
      << "fto_std_ms = " << s.fto.std_ms << '\n'
      << "turn_continue_prob = " << s.turn_continue_prob << '\n'
      << "backchannel_prob = " << s.backchannel_prob << '\n'
      << "backchannel_mean_ms = " << s.backchannel.mean_ms << '\n'
      << "backchannel_std_ms = " << s.backchannel.std_ms << '\n'
      << "separation_ms = " << s.separation_ms << '\n'
      << "p_self = " << s.p_self << '\n'
      << "content_units = " << s.content_units << '\n'
      << "content_branching = " << s.content_branching << '\n'
      << "response_prob = " << s.response_prob << '\n'
      << "content_seed = " << s.content_seed << '\n';
  return out.str();
}

}  // namespace duplex
