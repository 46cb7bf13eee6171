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

#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "duplex/corpus_io.h"
#include "duplex/corpus_stats.h"
#include "duplex/correlation_report.h"
#include "duplex/decoder.h"
#include "duplex/errors.h"
#include "duplex/interaction.h"
#include "duplex/ngram_model.h"
#include "duplex/sampler.h"
#include "duplex/semantic_eval.h"
#include "duplex/style.h"
#include "duplex/synth.h"
#include "duplex/tokens.h"

namespace duplex::cli {
namespace {

using nlohmann::ordered_json;

// Failures raised while checking flags and inputs, before any work.
struct ValidationError : std::runtime_error {
  ValidationError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code(std::move(code)) {}
  std::string code;
};

[[noreturn]] void Invalid(const std::string& msg) {
  throw ValidationError("InvalidConfig", msg);
}

struct Globals {
  std::uint64_t seed = 0;
  int frame_ms = 40;
  int chunk_ms = 160;
  int vocab = 501;
  std::vector<Token> silence = {0};
  std::string out;
  // Set for flags given on the command line.
  bool frame_set = false, chunk_set = false, vocab_set = false,
       silence_set = false;
};

struct SamplerFlags {
  double temperature = 1.0;
  int top_k = 0;
  bool greedy = false;
  std::string overflow = "truncate";

  SamplerConfig Config(std::uint64_t seed, int vocab_ext) const {
    SamplerConfig c;
    c.temperature = temperature;
    if (greedy) {
      c.top_k = 1;
    } else if (top_k > 0) {
      c.top_k = top_k;
    }
    c.seed = seed;
    c.Validate(vocab_ext);
    return c;
  }
  OverflowPolicy Policy() const {
    return overflow == "error" ? OverflowPolicy::kError
                               : OverflowPolicy::kTruncate;
  }
};

void AddSamplerFlags(CLI::App* cmd, SamplerFlags& f) {
  cmd->add_option("--temperature", f.temperature, "Sampling temperature")
      ->capture_default_str();
  cmd->add_option("--top-k", f.top_k, "Keep the k most likely tokens (0: all)")
      ->capture_default_str();
  cmd->add_flag("--greedy", f.greedy, "Greedy decoding (top-k 1)");
  cmd->add_option("--overflow", f.overflow, "Chunk overflow policy")
      ->check(CLI::IsMember({"truncate", "error"}))
      ->capture_default_str();
}

Vocab FlagVocab(const Globals& g) {
  Vocab v;
  v.size = g.vocab;
  v.frame_ms = g.frame_ms;
  v.silence_tokens = g.silence;
  return v;
}

// Data files carry their own token format; explicit flags must agree.
void CheckFormat(const Globals& g, const Vocab& v, const std::string& what) {
  if ((g.vocab_set && g.vocab != v.size) ||
      (g.frame_set && g.frame_ms != v.frame_ms) ||
      (g.silence_set && g.silence != v.silence_tokens)) {
    Invalid("token format flags disagree with " + what);
  }
}

void CheckOutputPath(const std::string& path, const std::string& flag) {
  if (path.empty()) Invalid(flag + " is required");
  namespace fs = std::filesystem;
  const fs::path parent = fs::absolute(fs::path(path)).parent_path();
  std::error_code ec;
  if (!fs::is_directory(parent, ec)) {
    Invalid("output directory does not exist: " + parent.string());
  }
}

void CheckInputPath(const std::string& path, const std::string& flag) {
  if (path.empty()) Invalid(flag + " is required");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    Invalid("input file not found: " + path);
  }
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  f.close();
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
}

std::string ReadText(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

ordered_json ParseJsonFile(const std::string& path) {
  try {
    return ordered_json::parse(ReadText(path));
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kIo, path + ": " + e.what());
  }
}

std::string CorpusText(const std::vector<Dialogue>& corpus) {
  std::ostringstream s;
  WriteCorpus(s, corpus);
  return s.str();
}

// Reads a corpus and checks that all dialogues share one token format.
std::vector<Dialogue> LoadCorpus(const Globals& g, const std::string& path,
                                 const std::string& flag, bool allow_empty) {
  CheckInputPath(path, flag);
  auto corpus = ReadCorpusFile(path);
  if (corpus.empty() && !allow_empty) {
    throw ValidationError("EmptyCorpus", path + " holds no dialogues");
  }
  for (const auto& d : corpus) {
    if (!(d.vocab == corpus.front().vocab)) {
      Invalid(path + " mixes token formats");
    }
  }
  if (!corpus.empty()) CheckFormat(g, corpus.front().vocab, path);
  return corpus;
}

struct LoadedModel {
  std::unique_ptr<NGramModel> model;
  Vocab vocab;
  int chunk_ms = 0;
};

ordered_json FormatJson(const Vocab& v, int chunk_ms) {
  return {{"vocab", v.size},
          {"frame_ms", v.frame_ms},
          {"silence", v.silence_tokens},
          {"chunk_ms", chunk_ms}};
}

LoadedModel LoadModel(const Globals& g, const std::string& path,
                      const std::string& flag) {
  CheckInputPath(path, flag);
  const auto j = ParseJsonFile(path);
  LoadedModel m;
  m.model = std::make_unique<NGramModel>(NGramModel::FromJson(j));
  if (!j.contains("format")) {
    throw Error(ErrorCode::kIo, path + ": missing token format");
  }
  try {
    const auto& f = j.at("format");
    m.vocab.size = f.at("vocab").get<int>();
    m.vocab.frame_ms = f.at("frame_ms").get<int>();
    m.vocab.silence_tokens = f.at("silence").get<std::vector<Token>>();
    m.chunk_ms = f.at("chunk_ms").get<int>();
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kIo, path + ": bad token format: " + e.what());
  }
  m.vocab.Validate();
  m.vocab.FramesPerChunk(m.chunk_ms);
  if (m.model->vocab_ext() != m.vocab.extended_size()) {
    throw Error(ErrorCode::kIo, path + ": vocabulary size mismatch");
  }
  CheckFormat(g, m.vocab, path);
  if (g.chunk_set && g.chunk_ms != m.chunk_ms) {
    Invalid("--chunk-ms disagrees with the chunk size of " + path);
  }
  return m;
}

// Durations are rounded down to whole chunks.
int ChunksFor(int ms, int chunk_ms, const std::string& flag) {
  if (ms < 0) Invalid(flag + " must be >= 0");
  return ms / chunk_ms;
}

DedupDialogue Encode(const Dialogue& d, int chunk_ms) {
  return Deduplicate(
      ChunkStreams(d.channels[0], d.channels[1], d.vocab, chunk_ms));
}

Dialogue Decode(const std::string& id, const DedupDialogue& d) {
  auto streams = ToStreams(Interpolate(d));
  Dialogue out;
  out.id = id;
  out.vocab = d.vocab;
  out.channels = std::move(streams);
  return out;
}

DedupDialogue Prefix(const DedupDialogue& d, int chunks) {
  DedupDialogue out = d;
  out.chunks.resize(static_cast<std::size_t>(chunks));
  return out;
}

std::string Dump(const ordered_json& j) { return j.dump(1) + "\n"; }

// A subcommand validates everything in its first phase and returns the work
// to run; failures there exit with kExitValidation.
using Work = std::function<void()>;

// ---- synth ----------------------------------------------------------------

struct SynthFlags {
  std::string style;
  int count = 10;
  int duration_ms = 60000;
  std::string regime = "full";
  std::string id_prefix = "dlg";
};

Work PrepareSynth(const Globals& g, const SynthFlags& f) {
  DialogueStyle style;
  if (!f.style.empty()) {
    CheckInputPath(f.style, "--style");
    style = LoadStyleFile(f.style);
  }
  if (g.vocab_set) style.vocab.size = g.vocab;
  if (g.frame_set) style.vocab.frame_ms = g.frame_ms;
  if (g.silence_set) style.vocab.silence_tokens = g.silence;
  style.Validate();
  style.vocab.FramesPerChunk(g.chunk_ms);
  if (f.count < 0) Invalid("--count must be >= 0");
  if (f.duration_ms < 0 || f.duration_ms % style.vocab.frame_ms != 0) {
    throw ValidationError("BadDuration",
                          "--duration-ms must be a non-negative multiple of "
                          "the frame duration");
  }
  CheckOutputPath(g.out, "--out");
  const auto regime = f.regime == "turn" ? CorpusRegime::kTurnBased
                                         : CorpusRegime::kFullDuplex;
  return [=] {
    auto corpus = GenerateCorpus(style, f.count, f.duration_ms, g.seed, regime,
                                 f.id_prefix);
    WriteText(g.out, CorpusText(corpus.dialogues));
  };
}

// ---- train ----------------------------------------------------------------

struct TrainFlags {
  std::string corpus;
  int order = 4;
  double alpha = 0.1;
};

Work PrepareTrain(const Globals& g, const TrainFlags& f) {
  auto corpus = LoadCorpus(g, f.corpus, "--corpus", false);
  const Vocab vocab = corpus.front().vocab;
  vocab.FramesPerChunk(g.chunk_ms);
  NGramModel(f.order, f.alpha, vocab.extended_size());  // validates
  CheckOutputPath(g.out, "--out");
  return [=] {
    std::vector<std::vector<Token>> seqs;
    seqs.reserve(corpus.size());
    for (const auto& d : corpus) seqs.push_back(Flatten(Encode(d, g.chunk_ms)));
    auto model =
        NGramModel::Train(seqs, f.order, f.alpha, vocab.extended_size());
    auto j = model.ToJson();
    j["format"] = FormatJson(vocab, g.chunk_ms);
    WriteText(g.out, j.dump() + "\n");
  };
}

// ---- continue -------------------------------------------------------------

struct ContinueFlags {
  std::string model;
  std::string prompts;
  int prompt_ms = 10000;
  int continue_ms = 30000;
  std::string transcript;
  SamplerFlags sampler;
};

Work PrepareContinue(const Globals& g, const ContinueFlags& f) {
  auto lm = std::make_shared<LoadedModel>(LoadModel(g, f.model, "--model"));
  auto prompts = LoadCorpus(g, f.prompts, "--prompts", true);
  if (!prompts.empty() && !(prompts.front().vocab == lm->vocab)) {
    Invalid("prompt corpus and model use different token formats");
  }
  const int chunk_ms = lm->chunk_ms;
  const int p = ChunksFor(f.prompt_ms, chunk_ms, "--prompt-ms");
  const int n = ChunksFor(f.continue_ms, chunk_ms, "--continue-ms");
  if (n < 1) Invalid("--continue-ms must cover at least one chunk");
  f.sampler.Config(g.seed, lm->vocab.extended_size());
  const int need = p * lm->vocab.FramesPerChunk(chunk_ms);
  for (const auto& d : prompts) {
    if (d.frames() < need) {
      Invalid("dialogue " + d.id + " is shorter than --prompt-ms");
    }
  }
  CheckOutputPath(g.out, "--out");
  if (!f.transcript.empty()) CheckOutputPath(f.transcript, "--transcript");

  return [=] {
    std::vector<Dialogue> generated;
    ordered_json runs = ordered_json::array();
    for (std::size_t i = 0; i < prompts.size(); ++i) {
      const auto& d = prompts[i];
      const auto prompt =
          Encode(SliceFrames(d, 0, need), chunk_ms);
      Sampler sampler(f.sampler.Config(DialogueSeed(g.seed, i),
                                       lm->vocab.extended_size()));
      DecodeStats stats;
      auto out = ContinueDialogue(*lm->model, prompt, n, sampler,
                                  f.sampler.Policy(), &stats);
      generated.push_back(Decode(d.id, out));
      runs.push_back({{"id", d.id},
                      {"prompt_chunks", p},
                      {"chunks", out.chunks.size()},
                      {"capacity_hits", stats.capacity_hits},
                      {"draws", sampler.draws()},
                      {"dialogue", DialogueJson(out)}});
    }
    WriteText(g.out, CorpusText(generated));
    if (!f.transcript.empty()) {
      ordered_json j;
      j["seed"] = g.seed;
      j["chunk_ms"] = chunk_ms;
      j["prompt_ms"] = f.prompt_ms;
      j["continue_ms"] = f.continue_ms;
      j["runs"] = std::move(runs);
      WriteText(f.transcript, Dump(j));
    }
  };
}

// ---- interact -------------------------------------------------------------

struct InteractFlags {
  std::string model;
  std::string user_model;
  bool scripted = false;
  std::string prompts;
  int prompt_ms = 10000;
  int total_ms = 40000;
  int latency = 1;
  bool record_contexts = false;
  std::string corpus_out;
  SamplerFlags sampler;
};

Work PrepareInteract(const Globals& g, const InteractFlags& f) {
  if (f.scripted == !f.user_model.empty()) {
    Invalid("give exactly one of --user-model and --scripted");
  }
  auto llm = std::make_shared<LoadedModel>(LoadModel(g, f.model, "--model"));
  std::shared_ptr<LoadedModel> user;
  if (!f.user_model.empty()) {
    user = std::make_shared<LoadedModel>(
        LoadModel(g, f.user_model, "--user-model"));
    if (!(user->vocab == llm->vocab) || user->chunk_ms != llm->chunk_ms) {
      Invalid("--model and --user-model use different token formats");
    }
  }
  auto prompts = LoadCorpus(g, f.prompts, "--prompts", true);
  if (!prompts.empty() && !(prompts.front().vocab == llm->vocab)) {
    Invalid("prompt corpus and model use different token formats");
  }
  const int chunk_ms = llm->chunk_ms;
  const int p = ChunksFor(f.prompt_ms, chunk_ms, "--prompt-ms");
  const int total = ChunksFor(f.total_ms, chunk_ms, "--total-ms");
  if (total < p) Invalid("--total-ms is shorter than --prompt-ms");
  InteractionConfig base;
  base.chunk_ms = chunk_ms;
  base.latency_chunks = f.latency;
  base.max_chunks = total;
  base.sampler = f.sampler.Config(g.seed, llm->vocab.extended_size());
  base.overflow_policy = f.sampler.Policy();
  base.record_contexts = f.record_contexts;
  base.Validate(llm->vocab);
  const int need_ms = (f.scripted ? total : p) * chunk_ms;
  for (const auto& d : prompts) {
    if (d.frames() * d.vocab.frame_ms < need_ms) {
      throw ValidationError(f.scripted ? "SourceExhausted" : "InvalidConfig",
                            "dialogue " + d.id + " is shorter than " +
                                std::to_string(need_ms) + " ms");
    }
  }
  CheckOutputPath(g.out, "--out");
  if (!f.corpus_out.empty()) CheckOutputPath(f.corpus_out, "--corpus-out");

  return [=] {
    ordered_json runs = ordered_json::array();
    std::vector<Dialogue> dialogues;
    for (std::size_t i = 0; i < prompts.size(); ++i) {
      const auto& d = prompts[i];
      const auto full = Encode(
          SliceFrames(d, 0, need_ms / d.vocab.frame_ms),
          chunk_ms);
      UserSource source;
      if (f.scripted) {
        ScriptedUser s;
        for (int c = p; c < total; ++c) s.chunks.push_back(full.chunks[c].novel[1]);
        source = std::move(s);
      } else {
        source = ModelUser{user->model.get()};
      }
      InteractionConfig cfg = base;
      cfg.sampler.seed = DialogueSeed(g.seed, i);
      auto tr = SimulateInteraction(*llm->model, source, Prefix(full, p), cfg);
      dialogues.push_back(Decode(d.id, tr.dialogue));
      ordered_json run;
      run["id"] = d.id;
      run["transcript"] = ToJson(tr);
      runs.push_back(std::move(run));
    }
    ordered_json j;
    j["seed"] = g.seed;
    j["latency_chunks"] = f.latency;
    j["chunk_ms"] = chunk_ms;
    j["runs"] = std::move(runs);
    WriteText(g.out, Dump(j));
    if (!f.corpus_out.empty()) WriteText(f.corpus_out, CorpusText(dialogues));
  };
}

// ---- eval -----------------------------------------------------------------

struct EvalFlags {
  std::string mode = "turns";
  std::string generated;
  std::string reference;
  std::string model;
  std::string name = "model";
  std::string dataset = "dataset";
  std::string csv;
  int prompt_ms = 10000;
  bool shuffle = false;
  int ipu_gap_ms = 200;
  int min_voiced_ms = 0;
  int bridge_ms = 0;
};

EventExtraction ExtractionFlags(const EvalFlags& f, const Vocab& v) {
  auto multiple = [&](int ms, const char* flag) {
    if (ms < 0 || ms % v.frame_ms != 0) {
      Invalid(std::string(flag) + " must be a non-negative multiple of " +
              std::to_string(v.frame_ms) + " ms");
    }
  };
  multiple(f.min_voiced_ms, "--min-voiced-ms");
  multiple(f.bridge_ms, "--bridge-ms");
  if (f.ipu_gap_ms < 0) Invalid("--ipu-gap-ms must be >= 0");
  EventExtraction e;
  e.vad.min_voiced_ms = f.min_voiced_ms;
  e.vad.bridge_ms = f.bridge_ms;
  e.turns.ipu_gap_ms = f.ipu_gap_ms;
  return e;
}

// Shuffles the frames of each channel after the prompt.
Dialogue ShuffleContinuation(const Dialogue& d, int from, std::uint64_t seed) {
  Dialogue out = d;
  std::mt19937_64 rng(seed);
  for (auto& ch : out.channels) {
    if (from < static_cast<int>(ch.tokens.size())) {
      std::shuffle(ch.tokens.begin() + from, ch.tokens.end(), rng);
    }
  }
  return out;
}

Work PrepareEval(const Globals& g, const EvalFlags& f) {
  CheckOutputPath(g.out, "--out");
  if (!f.csv.empty()) CheckOutputPath(f.csv, "--csv");
  if (f.mode == "turns") {
    auto gen = LoadCorpus(g, f.generated, "--generated", false);
    auto ref = LoadCorpus(g, f.reference, "--reference", false);
    const auto ex = ExtractionFlags(f, gen.front().vocab);
    ExtractionFlags(f, ref.front().vocab);
    return [=] {
      auto report = BuildCorrelationReport(gen, ref, ex);
      ordered_json j;
      j["mode"] = "turns";
      j["model"] = f.name;
      j["dataset"] = f.dataset;
      j["report"] = ToJson(report);
      WriteText(g.out, Dump(j));
      if (!f.csv.empty()) {
        WriteText(f.csv, CorrelationCsvHeader() + "\n" +
                             CorrelationCsvRow(f.name, f.dataset, report) +
                             "\n");
      }
    };
  }
  if (f.mode == "stats") {
    auto gen = LoadCorpus(g, f.generated, "--generated", false);
    const auto ex = ExtractionFlags(f, gen.front().vocab);
    gen.front().vocab.FramesPerChunk(g.chunk_ms);
    return [=] {
      ordered_json j;
      j["mode"] = "stats";
      j["model"] = f.name;
      j["dataset"] = f.dataset;
      j["stats"] = ToJson(ComputeCorpusStats(gen, g.chunk_ms, ex));
      WriteText(g.out, Dump(j));
    };
  }
  // ppl
  auto lm = std::make_shared<LoadedModel>(LoadModel(g, f.model, "--model"));
  auto gen = LoadCorpus(g, f.generated, "--generated", false);
  if (!(gen.front().vocab == lm->vocab)) {
    Invalid("--generated and --model use different token formats");
  }
  const int p = ChunksFor(f.prompt_ms, lm->chunk_ms, "--prompt-ms");
  return [=] {
    std::vector<ScoredDialogue> scored;
    const int from = p * lm->vocab.FramesPerChunk(lm->chunk_ms);
    for (std::size_t i = 0; i < gen.size(); ++i) {
      const Dialogue d = f.shuffle
                             ? ShuffleContinuation(gen[i], from,
                                                   DialogueSeed(g.seed, i))
                             : gen[i];
      scored.push_back({Encode(d, lm->chunk_ms), p});
    }
    std::vector<double> values;
    const double median = MedianPerplexity(*lm->model, scored, &values);
    ordered_json per = ordered_json::array();
    for (std::size_t i = 0; i < gen.size(); ++i) {
      per.push_back({{"id", gen[i].id}, {"perplexity", values[i]}});
    }
    ordered_json j;
    j["mode"] = "ppl";
    j["model"] = f.name;
    j["dataset"] = f.dataset;
    j["shuffled"] = f.shuffle;
    j["prompt_ms"] = f.prompt_ms;
    j["median_perplexity"] = median;
    j["dialogues"] = std::move(per);
    WriteText(g.out, Dump(j));
    if (!f.csv.empty()) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6f", median);
      WriteText(f.csv, "model,dataset,median_perplexity,dialogues\n" + f.name +
                           "," + f.dataset + "," + buf + "," +
                           std::to_string(gen.size()) + "\n");
    }
  };
}

// ---- report ---------------------------------------------------------------

std::string FormatField(const ordered_json& v) {
  if (v.is_null()) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v.get<double>());
  return buf;
}

Work PrepareReport(const Globals& g, const std::vector<std::string>& inputs) {
  if (inputs.empty()) Invalid("--inputs needs at least one eval report");
  std::vector<ordered_json> reports;
  std::string mode;
  for (const auto& path : inputs) {
    CheckInputPath(path, "--inputs");
    auto j = ParseJsonFile(path);
    const std::string m = j.value("mode", "");
    if (m != "turns" && m != "ppl") {
      Invalid(path + " is not a turns or ppl eval report");
    }
    if (!mode.empty() && m != mode) Invalid("--inputs mixes report modes");
    mode = m;
    reports.push_back(std::move(j));
  }
  CheckOutputPath(g.out, "--out");
  return [=] {
    std::string csv;
    if (mode == "turns") {
      csv = CorrelationCsvHeader() + "\n";
      for (const auto& j : reports) {
        const auto& k = j.at("report").at("kinds");
        csv += j.at("model").get<std::string>() + "," +
               j.at("dataset").get<std::string>() + "," +
               FormatField(k.at("ipu").at("r")) + "," +
               FormatField(k.at("pause").at("r")) + "," +
               FormatField(k.at("fto").at("r")) + "," +
               FormatField(j.at("report").at("average_r")) + "\n";
      }
    } else {
      csv = "model,dataset,median_perplexity,dialogues\n";
      for (const auto& j : reports) {
        csv += j.at("model").get<std::string>() + "," +
               j.at("dataset").get<std::string>() + "," +
               FormatField(j.at("median_perplexity")) + "," +
               std::to_string(j.at("dialogues").size()) + "\n";
      }
    }
    WriteText(g.out, csv);
  };
}

void Fail(std::ostream& err, const std::string& code, const std::string& kind,
          const std::string& message) {
  ordered_json j;
  j["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
  err << j.dump() << "\n";
}

bool IsInputError(ErrorCode c) {
  switch (c) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kBadChunkSize:
    case ErrorCode::kBadDuration:
    case ErrorCode::kVersionMismatch:
    case ErrorCode::kIo:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kMalformedSequence:
    case ErrorCode::kEmptyCorpus:
      return true;
    default:
      return false;
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Chunk-synchronous two-channel dialogue token toolkit",
               "duplex"};
  app.require_subcommand(1);
  Globals g;
  std::string silence_list;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  auto* frame = app.add_option("--frame-ms", g.frame_ms, "Frame duration")
                    ->capture_default_str();
  auto* chunk = app.add_option("--chunk-ms", g.chunk_ms, "Chunk duration")
                    ->capture_default_str();
  auto* vocab = app.add_option("--vocab", g.vocab, "Number of speech units")
                    ->capture_default_str();
  auto* silence =
      app.add_option("--silence-token", g.silence,
                     "Silence unit id (repeat or comma-separate for a set)")
          ->delimiter(',')
          ->capture_default_str();
  app.add_option("--out", g.out, "Primary output file");
  app.fallthrough();

  SynthFlags synth;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  c_synth->add_option("--style", synth.style, "Style file (key = value)");
  c_synth->add_option("--count", synth.count, "Dialogues")->capture_default_str();
  c_synth->add_option("--duration-ms", synth.duration_ms, "Dialogue length")
      ->capture_default_str();
  c_synth->add_option("--regime", synth.regime,
                      "full: overlaps and backchannels; turn: no overlap")
      ->check(CLI::IsMember({"full", "turn"}))
      ->capture_default_str();
  c_synth->add_option("--id-prefix", synth.id_prefix, "Dialogue id prefix")
      ->capture_default_str();

  TrainFlags train;
  auto* c_train = app.add_subcommand("train", "Train an n-gram token model");
  c_train->add_option("--corpus", train.corpus, "Training corpus (JSONL)")
      ->required();
  c_train->add_option("--order", train.order, "Context length")
      ->capture_default_str();
  c_train->add_option("--alpha", train.alpha, "Additive smoothing")
      ->capture_default_str();

  ContinueFlags cont;
  auto* c_cont =
      app.add_subcommand("continue", "Continue prompts on both channels");
  c_cont->add_option("--model", cont.model, "Model file")->required();
  c_cont->add_option("--prompts", cont.prompts, "Prompt corpus")->required();
  c_cont->add_option("--prompt-ms", cont.prompt_ms, 
                     "Prompt length, rounded down to whole chunks")
      ->capture_default_str();
  c_cont->add_option("--continue-ms", cont.continue_ms, "Generated length, rounded down")
      ->capture_default_str();
  c_cont->add_option("--transcript", cont.transcript, "Transcript JSON");
  AddSamplerFlags(c_cont, cont.sampler);

  InteractFlags inter;
  auto* c_inter = app.add_subcommand(
      "interact", "Simulate latency-bound interaction with a user source");
  c_inter->add_option("--model", inter.model, "Model on channel 0")->required();
  c_inter->add_option("--user-model", inter.user_model,
                      "Model speaking as channel 1");
  c_inter->add_flag("--scripted", inter.scripted,
                    "Replay channel 1 of the prompt corpus as the user");
  c_inter->add_option("--prompts", inter.prompts, "Prompt corpus")->required();
  c_inter->add_option("--prompt-ms", inter.prompt_ms, 
                     "Prompt length, rounded down to whole chunks")
      ->capture_default_str();
  c_inter->add_option("--total-ms", inter.total_ms,
                      "Dialogue length including the prompt, rounded down")
      ->capture_default_str();
  c_inter->add_option("--latency", inter.latency, "Latency in chunks")
      ->capture_default_str();
  c_inter->add_flag("--record-contexts", inter.record_contexts,
                    "Store every generation context in the transcript");
  c_inter->add_option("--corpus-out", inter.corpus_out,
                      "Final dialogues as a JSONL corpus");
  AddSamplerFlags(c_inter, inter.sampler);

  EvalFlags eval;
  auto* c_eval = app.add_subcommand("eval", "Evaluate a corpus");
  c_eval->add_option("--mode", eval.mode,
                     "turns: event correlation; ppl: median perplexity; "
                     "stats: event statistics")
      ->check(CLI::IsMember({"turns", "ppl", "stats"}))
      ->capture_default_str();
  c_eval->add_option("--generated", eval.generated, "Corpus under test")
      ->required();
  c_eval->add_option("--reference", eval.reference, "Reference corpus (turns)");
  c_eval->add_option("--model", eval.model, "Reference model (ppl)");
  c_eval->add_option("--name", eval.name, "Model label")->capture_default_str();
  c_eval->add_option("--dataset", eval.dataset, "Dataset label")
      ->capture_default_str();
  c_eval->add_option("--csv", eval.csv, "Also write a one-row CSV");
  c_eval->add_option("--prompt-ms", eval.prompt_ms,
                     "Prompt length excluded from scoring (ppl)")
      ->capture_default_str();
  c_eval->add_flag("--shuffle", eval.shuffle,
                   "Shuffle continuation frames before scoring (ppl)");
  c_eval->add_option("--ipu-gap-ms", eval.ipu_gap_ms, "IPU merge threshold")
      ->capture_default_str();
  c_eval->add_option("--min-voiced-ms", eval.min_voiced_ms,
                     "Drop voiced runs shorter than this")
      ->capture_default_str();
  c_eval->add_option("--bridge-ms", eval.bridge_ms,
                     "Bridge silences shorter than this")
      ->capture_default_str();

  std::vector<std::string> inputs;
  auto* c_report =
      app.add_subcommand("report", "Collect eval reports into one CSV");
  c_report->add_option("--inputs", inputs, "Eval JSON files")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "duplex 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    Fail(err, "Usage", "validation", e.what());
    return kExitValidation;
  }
  g.frame_set = frame->count() > 0;
  g.chunk_set = chunk->count() > 0;
  g.vocab_set = vocab->count() > 0;
  g.silence_set = silence->count() > 0;

  Work work;
  try {
    FlagVocab(g).Validate();
    FlagVocab(g).FramesPerChunk(g.chunk_ms);
    if (c_synth->parsed()) work = PrepareSynth(g, synth);
    if (c_train->parsed()) work = PrepareTrain(g, train);
    if (c_cont->parsed()) work = PrepareContinue(g, cont);
    if (c_inter->parsed()) work = PrepareInteract(g, inter);
    if (c_eval->parsed()) work = PrepareEval(g, eval);
    if (c_report->parsed()) work = PrepareReport(g, inputs);
  } catch (const ValidationError& e) {
    Fail(err, e.code, "validation", e.what());
    return kExitValidation;
  } catch (const Error& e) {
    const bool input = IsInputError(e.code());
    Fail(err, std::string(ErrorCodeName(e.code())),
         input ? "validation" : "runtime", e.what());
    return input ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    Fail(err, "Internal", "runtime", e.what());
    return kExitRuntime;
  }

  try {
    work();
  } catch (const Error& e) {
    Fail(err, std::string(ErrorCodeName(e.code())), "runtime", e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    Fail(err, "Internal", "runtime", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace duplex::cli
