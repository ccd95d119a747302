#include "annoproj/pipeline.h"

#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "annoproj/config.h"
#include "annoproj/error.h"
#include "annoproj/evaluation.h"
#include "annoproj/unicode.h"
#include "doctest.h"
#include "fig_fixture.h"
#include "synthetic.h"

using namespace annoproj;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &name)
      : path(fs::temp_directory_path() / ("annoproj_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Config FigConfig(const fs::path &out_dir) {
  Config c = Config::Load(fig::Dir() / "run.cfg");
  c.Set("output", (out_dir / "out.conll").string());
  c.Set("alignments_out", (out_dir / "align.jsonl").string());
  return c;
}

int CodeFor(const std::function<void()> &fn) {
  try {
    fn();
  } catch (...) {
    return ExitCodeForCurrentException();
  }
  return kExitOk;
}

}  // namespace

TEST_CASE("projecting the running example reproduces the expected tags") {
  TranslationCache cache;
  fig::LoadCache(&cache);
  CachedProvider provider(&cache);
  BilingualLexicon lexicon = fig::Lexicon();
  ProjectionResources res{&provider, &lexicon, nullptr, fig::kEnEs};
  auto result = ProjectCorpus(fig::Source(), fig::Target(), res, MatchConfig{});
  CHECK(result.projected == fig::Expected());
  CHECK(result.source_entities == 6);
  CHECK(result.tagged_entities == 6);
  CHECK(result.TaggedFraction() == 1.0);
  std::vector<AlignmentRecord> records;
  for (const auto &p : result.pairs) records.push_back(ToRecord(p));
  std::sort(records.begin(), records.end());
  CHECK(records == LoadAlignments(fig::Dir() / "gold_alignments.jsonl"));
}

TEST_CASE("without distributional matching US stays untagged") {
  TranslationCache cache;
  fig::LoadCache(&cache);
  CachedProvider provider(&cache);
  BilingualLexicon lexicon = fig::Lexicon();
  MatchConfig c;
  c.use_dist = false;
  auto result = ProjectCorpus(fig::Source(), fig::Target(), {&provider, &lexicon, nullptr, fig::kEnEs}, c);
  CHECK(result.tagged_entities == 4);
  CHECK(result.projected.sentences[0].tags[6] == IobTag::Outside());
}

TEST_CASE("projection input contracts") {
  TranslationCache cache;
  CachedProvider provider(&cache);
  ProjectionResources res{&provider, nullptr, nullptr, fig::kEnEs};
  Corpus src = fig::Source();
  Corpus short_target = fig::Target();
  short_target.sentences.pop_back();
  CHECK_THROWS_AS(ProjectCorpus(src, short_target, res, MatchConfig{}), ContractError);
  CHECK_THROWS_AS(ProjectCorpus(Corpus{}, Corpus{}, res, MatchConfig{}), ContractError);
  ProjectionResources none{nullptr, nullptr, nullptr, fig::kEnEs};
  CHECK_THROWS_AS(ProjectCorpus(src, fig::Target(), none, MatchConfig{}), ContractError);
}

TEST_CASE("project command writes output, alignments and a manifest") {
  TempDir dir("pipeline_project");
  Config c = FigConfig(dir.path);
  std::ostringstream log;
  RunProject(c, log);
  CHECK(Slurp(dir.path / "out.conll") == Slurp(fig::Dir() / "expected.conll"));
  CHECK(LoadAlignments(dir.path / "align.jsonl") ==
        LoadAlignments(fig::Dir() / "gold_alignments.jsonl"));
  auto manifest = nlohmann::json::parse(Slurp(dir.path / "out.conll.manifest.json"));
  CHECK(manifest["command"] == "project");
  CHECK(manifest["version"] == kVersion);
  CHECK(manifest["config_sha256"] == Sha256Hex(c.Canonical()));
  CHECK(manifest["inputs"]["source_corpus"]["sha256"] ==
        Sha256Hex(Slurp(fig::Dir() / "source.conll")));
  CHECK(manifest["outputs"]["output"] == Sha256Hex(Slurp(dir.path / "out.conll")));
  CHECK(log.str().find("tagged 6 of 6") != std::string::npos);
}

TEST_CASE("sha-256 of known strings") {
  CHECK(Sha256Hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(Sha256Hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("evaluate with predictions equal to gold reports all ones") {
  TempDir dir("pipeline_eval");
  Config c = FigConfig(dir.path);
  std::ostringstream log;
  RunProject(c, log);
  c.Set("gold_alignments", (fig::Dir() / "gold_alignments.jsonl").string());
  c.Set("gold_target", (fig::Dir() / "expected.conll").string());
  c.Set("report", (dir.path / "report.json").string());
  EvalReport r = RunEvaluate(c, log);
  CHECK(r.miss_rate == 0.0);
  CHECK(r.excess_rate == 0.0);
  REQUIRE(r.alignment);
  CHECK(r.alignment->precision == 1.0);
  CHECK(r.alignment->recall == 1.0);
  CHECK(r.alignment->f1 == 1.0);
  REQUIRE(r.span);
  CHECK(r.span->f1 == 1.0);
  auto j = nlohmann::json::parse(Slurp(dir.path / "report.json"));
  CHECK(j["span"]["f1"] == 1.0);
}

TEST_CASE("failed runs leave no partial outputs") {
  TempDir dir("pipeline_partial");
  Config c = FigConfig(dir.path);
  c.Set("alignments_out", (dir.path / "no-such-dir" / "align.jsonl").string());
  std::ostringstream log;
  CHECK_THROWS(RunProject(c, log));
  CHECK_FALSE(fs::exists(dir.path / "out.conll"));
  CHECK_FALSE(fs::exists(dir.path / "out.conll.tmp"));
}

TEST_CASE("error classes map to exit codes") {
  TempDir dir("pipeline_codes");
  std::ostringstream log;
  CHECK(CodeFor([&] { RunProject(FigConfig(dir.path), log); }) == kExitOk);
  CHECK(CodeFor([&] {
          Config c = FigConfig(dir.path);
          c.Set("source_corpus", "missing.conll");
          RunProject(c, log);
        }) == kExitMissingInput);
  CHECK(CodeFor([&] {
          Config c = Config::Load(fig::Dir() / "run.cfg");
          RunProject(c, log);
        }) == kExitConfig);
  CHECK(CodeFor([&] {
          Config c = FigConfig(dir.path);
          c.Set("phonetic", "true");
          RunProject(c, log);
        }) == kExitConfig);
  CHECK(CodeFor([&] {
          Config c = FigConfig(dir.path);
          c.Set("cache", (dir.path / "empty.jsonl").string());
          RunProject(c, log);
        }) == kExitTranslation);
  CHECK(CodeFor([&] {
          Config c = FigConfig(dir.path);
          c.Set("source_corpus", (fig::Dir() / "../bad/invalid_iob.conll").string());
          RunProject(c, log);
        }) == kExitBadInput);
  CHECK(CodeFor([] { throw std::runtime_error("x"); }) == kExitFailure);
}

TEST_CASE("forward translation from the cache") {
  TempDir dir("pipeline_translate");
  Config c = Config::Load(fig::Dir() / "run.cfg");
  c.Set("translated_corpus", (dir.path / "t.conll").string());
  std::ostringstream log;
  RunTranslate(c, log);
  CHECK(Slurp(dir.path / "t.conll") == Slurp(fig::Dir() / "target.conll"));
  CHECK(fs::exists(dir.path / "t.conll.manifest.json"));
  CHECK(log.str().find("0 live MT requests") != std::string::npos);
}

TEST_CASE("reverse translation goes target to source") {
  TempDir dir("pipeline_reverse");
  Corpus target = fig::Target();
  TranslationCache cache;
  for (const auto &s : target.sentences) {
    cache.Insert(JoinTokens(s.tokens), {"es", "en"}, {"EN " + JoinTokens(s.tokens)});
  }
  cache.Save(dir.path / "rev.jsonl");
  Config c = Config::Load(fig::Dir() / "run.cfg");
  c.Set("mode", "reverse");
  c.Set("cache", (dir.path / "rev.jsonl").string());
  c.Set("translated_corpus", (dir.path / "back.conll").string());
  std::ostringstream log;
  RunTranslate(c, log);
  Corpus back = ReadConllFile(dir.path / "back.conll");
  REQUIRE(back.size() == target.size());
  CHECK(back.sentences[2].tokens.front() == "EN");
  CHECK(log.str().find("es->en") != std::string::npos);
}

TEST_CASE("translate rejects parallel mode and missing translation sources") {
  std::ostringstream log;
  Config c = Config::Load(fig::Dir() / "run.cfg");
  c.Set("translated_corpus", "/tmp/x.conll");
  c.Set("mode", "parallel");
  CHECK_THROWS_AS(RunTranslate(c, log), ConfigError);
  c.Set("mode", "sideways");
  CHECK_THROWS_AS(RunTranslate(c, log), ConfigError);
}

TEST_CASE("the synthetic fixture projects deterministically across worker counts") {
  TempDir dir("pipeline_synthetic");
  auto fx = synthetic::Write(dir.path, 200, 7);
  std::string first;
  for (std::size_t workers : {1, 3, 8}) {
    Config c = Config::Load(fx.config);
    c.Set("workers", std::to_string(workers));
    std::ostringstream log;
    RunProject(c, log);
    std::string out = Slurp(dir.path / "projected.conll");
    if (first.empty()) first = out;
    CHECK(out == first);
  }
}

TEST_CASE("ablation on the synthetic fixture never loses entities") {
  TempDir dir("pipeline_ablate");
  auto fx = synthetic::Write(dir.path, 200, 7);
  Config c = Config::Load(fx.config);
  c.Set("ablation_report", (dir.path / "ablation.json").string());
  std::ostringstream log;
  auto steps = RunAblate(c, log);
  REQUIRE(steps.size() == 5);
  for (std::size_t i = 1; i < steps.size(); ++i) {
    CHECK(steps[i].tagged >= steps[i - 1].tagged);
    CHECK(steps[i].total == steps[0].total);
  }
  CHECK(steps.back().tagged == steps.back().total);
  CHECK(steps.front().tagged < steps.back().tagged);
  auto j = nlohmann::json::parse(Slurp(dir.path / "ablation.json"));
  CHECK(j.is_array());
  CHECK(j.size() == 5);
}
