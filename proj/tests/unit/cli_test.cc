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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.h"
#include "duplex/corpus_io.h"

namespace duplex::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() /
           ("duplex_cli_" + std::to_string(rd()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  static Result Run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = RunCli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
  }

  static std::string Slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

  void Synth(const std::string& out, int count, int duration_ms,
             const std::string& seed = "1",
             const std::string& regime = "full") {
    ASSERT_EQ(Run({"--seed", seed, "--out", out, "synth", "--count",
                   std::to_string(count), "--duration-ms",
                   std::to_string(duration_ms), "--regime", regime})
                  .code,
              kExitOk);
  }

  void Train(const std::string& corpus, const std::string& out) {
    ASSERT_EQ(Run({"--out", out, "train", "--corpus", corpus}).code, kExitOk);
  }

  fs::path dir_;
};

TEST_F(CliTest, SubcommandsAreByteDeterministic) {
  Synth(P("c.jsonl"), 6, 20000);
  Train(P("c.jsonl"), P("m.json"));
  const std::vector<std::vector<std::string>> runs = {
      {"--seed", "3", "--out", "@", "synth", "--count", "4", "--duration-ms",
       "12000"},
      {"--out", "@", "train", "--corpus", P("c.jsonl"), "--order", "3"},
      {"--seed", "3", "--out", "@", "continue", "--model", P("m.json"),
       "--prompts", P("c.jsonl"), "--prompt-ms", "4000", "--continue-ms",
       "2000"},
      {"--seed", "3", "--out", "@", "interact", "--model", P("m.json"),
       "--user-model", P("m.json"), "--prompts", P("c.jsonl"), "--prompt-ms",
       "4000", "--total-ms", "6000", "--latency", "2"},
      {"--seed", "3", "--out", "@", "interact", "--model", P("m.json"),
       "--scripted", "--prompts", P("c.jsonl"), "--prompt-ms", "4000",
       "--total-ms", "6000", "--record-contexts"},
      {"--out", "@", "eval", "--mode", "turns", "--generated", P("c.jsonl"),
       "--reference", P("c.jsonl")},
      {"--out", "@", "eval", "--mode", "ppl", "--generated", P("c.jsonl"),
       "--model", P("m.json"), "--prompt-ms", "4000"},
      {"--seed", "3", "--out", "@", "eval", "--mode", "ppl", "--generated",
       P("c.jsonl"), "--model", P("m.json"), "--shuffle"},
      {"--out", "@", "eval", "--mode", "stats", "--generated", P("c.jsonl")},
  };
  int i = 0;
  for (auto args : runs) {
    std::vector<std::string> contents;
    for (int rep = 0; rep < 2; ++rep) {
      const std::string out = P("out" + std::to_string(i) + "_" +
                                std::to_string(rep));
      for (auto& a : args) {
        if (a == "@" || a.rfind(P("out"), 0) == 0) a = out;
      }
      const auto r = Run(args);
      ASSERT_EQ(r.code, kExitOk) << r.err;
      contents.push_back(Slurp(out));
    }
    EXPECT_FALSE(contents[0].empty());
    EXPECT_EQ(contents[0], contents[1]) << "run " << i;
    ++i;
  }
}

TEST_F(CliTest, SeedChangesSampledOutput) {
  Synth(P("a.jsonl"), 3, 10000, "1");
  Synth(P("b.jsonl"), 3, 10000, "2");
  EXPECT_NE(Slurp(P("a.jsonl")), Slurp(P("b.jsonl")));
}

TEST_F(CliTest, ValidationFailuresWriteNothing) {
  Synth(P("c.jsonl"), 2, 8000);
  Train(P("c.jsonl"), P("m.json"));
  const std::vector<std::vector<std::string>> bad = {
      {"--out", P("x"), "synth", "--count", "-1"},
      {"--out", P("x"), "synth", "--duration-ms", "30"},
      {"--out", P("x"), "--chunk-ms", "100", "synth"},
      {"--out", P("x"), "synth", "--regime", "other"},
      {"--out", P("x"), "train", "--corpus", P("missing.jsonl")},
      {"--out", P("x"), "train", "--corpus", P("c.jsonl"), "--order", "0"},
      {"--out", P("x"), "train", "--corpus", P("c.jsonl"), "--alpha", "0"},
      {"--out", P("x"), "--vocab", "300", "train", "--corpus", P("c.jsonl")},
      {"--out", P("x"), "continue", "--model", P("m.json"), "--prompts",
       P("c.jsonl"), "--temperature", "0"},
      {"--out", P("x"), "continue", "--model", P("m.json"), "--prompts",
       P("c.jsonl"), "--prompt-ms", "600000"},
      {"--out", P("x"), "interact", "--model", P("m.json"), "--prompts",
       P("c.jsonl")},
      {"--out", P("x"), "interact", "--model", P("m.json"), "--prompts",
       P("c.jsonl"), "--scripted", "--user-model", P("m.json")},
      {"--out", P("x"), "interact", "--model", P("m.json"), "--prompts",
       P("c.jsonl"), "--scripted", "--latency", "-1"},
      {"--out", P("x"), "eval", "--mode", "turns", "--generated",
       P("c.jsonl")},
      {"--out", P("x"), "eval", "--mode", "ppl", "--generated", P("c.jsonl")},
      {"--out", P("x"), "report", "--inputs", P("c.jsonl")},
      {"--out", P("nodir/x"), "synth"},
      {"synth"},
      {"nosuchcommand"},
  };
  for (const auto& args : bad) {
    const auto r = Run(args);
    EXPECT_EQ(r.code, kExitValidation) << args[args.size() > 2 ? 2 : 0];
    EXPECT_FALSE(fs::exists(P("x")));
    const auto j = nlohmann::json::parse(r.err);
    EXPECT_EQ(j["error"]["kind"], "validation");
    EXPECT_TRUE(j["error"].contains("code"));
    EXPECT_TRUE(j["error"].contains("message"));
  }
}

TEST_F(CliTest, ZeroCountGivesEmptyCorpus) {
  ASSERT_EQ(Run({"--out", P("e.jsonl"), "synth", "--count", "0"}).code,
            kExitOk);
  EXPECT_TRUE(fs::exists(P("e.jsonl")));
  EXPECT_EQ(Slurp(P("e.jsonl")), "");
  // Training on it is an input error.
  const auto r = Run({"--out", P("m.json"), "train", "--corpus", P("e.jsonl")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_FALSE(fs::exists(P("m.json")));
}

TEST_F(CliTest, ModelVersionMismatch) {
  Synth(P("c.jsonl"), 2, 8000);
  Train(P("c.jsonl"), P("m.json"));
  auto j = nlohmann::json::parse(Slurp(P("m.json")));
  j["version"] = 2;
  std::ofstream(P("m2.json")) << j.dump();
  const auto r = Run({"--out", P("x"), "continue", "--model", P("m2.json"),
                      "--prompts", P("c.jsonl")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"]["code"], "VersionMismatch");
  EXPECT_FALSE(fs::exists(P("x")));
}

TEST_F(CliTest, SelfCorrelationAndReport) {
  Synth(P("c.jsonl"), 20, 30000);
  ASSERT_EQ(Run({"--out", P("t.json"), "eval", "--mode", "turns",
                 "--generated", P("c.jsonl"), "--reference", P("c.jsonl"),
                 "--name", "self", "--csv", P("t.csv")})
                .code,
            kExitOk);
  const auto j = nlohmann::json::parse(Slurp(P("t.json")));
  for (const char* k : {"ipu", "pause", "fto"}) {
    EXPECT_NEAR(j["report"]["kinds"][k]["r"].get<double>(), 1.0, 1e-12);
  }
  EXPECT_EQ(Slurp(P("t.csv")),
            "model,dataset,ipu_r,pause_r,fto_r,average_r\n"
            "self,dataset,1.000000,1.000000,1.000000,1.000000\n");
  ASSERT_EQ(Run({"--out", P("t2.json"), "eval", "--mode", "turns",
                 "--generated", P("c.jsonl"), "--reference", P("c.jsonl"),
                 "--name", "again", "--dataset", "synthetic"})
                .code,
            kExitOk);
  ASSERT_EQ(Run({"--out", P("r.csv"), "report", "--inputs", P("t.json"),
                 P("t2.json")})
                .code,
            kExitOk);
  std::istringstream csv(Slurp(P("r.csv")));
  std::vector<std::string> lines;
  for (std::string l; std::getline(csv, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "model,dataset,ipu_r,pause_r,fto_r,average_r");
  EXPECT_EQ(lines[2].rfind("again,synthetic,", 0), 0u);
}

TEST_F(CliTest, ReferenceBeatsShuffledPerplexity) {
  Synth(P("train.jsonl"), 40, 60000, "1");
  Synth(P("held.jsonl"), 10, 30000, "2");
  Train(P("train.jsonl"), P("m.json"));
  for (const char* name : {"ref", "shuf"}) {
    std::vector<std::string> args = {"--out", P(std::string(name) + ".json"),
                                     "eval", "--mode", "ppl", "--generated",
                                     P("held.jsonl"), "--model", P("m.json"),
                                     "--name", name};
    if (std::string(name) == "shuf") args.push_back("--shuffle");
    ASSERT_EQ(Run(args).code, kExitOk);
  }
  const double ref = nlohmann::json::parse(Slurp(P("ref.json")))
                         ["median_perplexity"];
  const double shuf = nlohmann::json::parse(Slurp(P("shuf.json")))
                          ["median_perplexity"];
  EXPECT_LT(ref, shuf);
  ASSERT_EQ(Run({"--out", P("r.csv"), "report", "--inputs", P("ref.json"),
                 P("shuf.json")})
                .code,
            kExitOk);
  EXPECT_EQ(Slurp(P("r.csv")).rfind("model,dataset,median_perplexity,dialogues\n"
                                    "ref,dataset,",
                                    0),
            0u);
  // Mixing report modes is rejected.
  ASSERT_EQ(Run({"--out", P("t.json"), "eval", "--mode", "turns",
                 "--generated", P("held.jsonl"), "--reference",
                 P("held.jsonl")})
                .code,
            kExitOk);
  EXPECT_EQ(Run({"--out", P("x.csv"), "report", "--inputs", P("ref.json"),
                 P("t.json")})
                .code,
            kExitValidation);
}

TEST_F(CliTest, GreedyTurnBasedOverlapStaysInsideChunks) {
  Synth(P("turn.jsonl"), 40, 60000, "1", "turn");
  Train(P("turn.jsonl"), P("m.json"));
  Synth(P("prompts.jsonl"), 20, 20000, "7", "turn");
  ASSERT_EQ(Run({"--out", P("gen.jsonl"), "continue", "--model", P("m.json"),
                 "--prompts", P("prompts.jsonl"), "--prompt-ms", "10000",
                 "--continue-ms", "10000", "--greedy"})
                .code,
            kExitOk);
  // The codec keeps no timing inside a chunk, so a turn change that falls
  // mid-chunk is spread over the whole chunk on decode and can leave a few
  // frames where both channels are voiced. Such runs stay inside one chunk
  // and are shorter than it; a real overlap would not be.
  const auto gen = ReadCorpusFile(P("gen.jsonl"));
  ASSERT_EQ(gen.size(), 20u);
  constexpr int kM = 4;
  for (const auto& d : gen) {
    const auto& a = d.channels[0].tokens;
    const auto& b = d.channels[1].tokens;
    for (int f = 0; f < d.frames();) {
      if (a[f] == 0 || b[f] == 0) {
        ++f;
        continue;
      }
      int e = f;
      while (e < d.frames() && a[e] != 0 && b[e] != 0) ++e;
      EXPECT_LT(e - f, kM) << d.id << " frame " << f;
      EXPECT_EQ(f / kM, (e - 1) / kM) << d.id << " frame " << f;
      f = e;
    }
  }
}

TEST_F(CliTest, CrossStyleInteraction) {
  Synth(P("a.jsonl"), 10, 30000, "1", "full");
  Synth(P("b.jsonl"), 10, 30000, "2", "turn");
  Train(P("a.jsonl"), P("ma.json"));
  Train(P("b.jsonl"), P("mb.json"));
  const auto r = Run({"--seed", "5", "--out", P("tr.json"), "interact",
                      "--model", P("ma.json"), "--user-model", P("mb.json"),
                      "--prompts", P("a.jsonl"), "--prompt-ms", "4000",
                      "--total-ms", "8000", "--top-k", "5", "--corpus-out",
                      P("final.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(Slurp(P("tr.json")));
  ASSERT_EQ(j["runs"].size(), 10u);
  EXPECT_EQ(j["runs"][0]["transcript"]["user"], "model");
  const auto final_corpus = ReadCorpusFile(P("final.jsonl"));
  ASSERT_EQ(final_corpus.size(), 10u);
  // 8000 ms rounds down to 50 chunks of 4 frames.
  EXPECT_EQ(final_corpus[0].frames(), 200);
}

}  // namespace
}  // namespace duplex::cli
