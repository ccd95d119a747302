#include "annoproj/config.h"

#include <filesystem>
#include <fstream>

#include "annoproj/error.h"
#include "doctest.h"
#include "fig_fixture.h"

using namespace annoproj;

TEST_CASE("parse key = value lines with comments") {
  Config c = Config::Parse("# run\nsource_lang = en\n\n  delta=0.5  \nphonetic = yes\n", "/data");
  CHECK(c.Get("source_lang") == "en");
  CHECK(c.GetDouble("delta", 0.25) == 0.5);
  CHECK(c.GetBool("phonetic", false));
  CHECK(c.GetSize("k", 5) == 5);
  CHECK_FALSE(c.Has("k"));
}

TEST_CASE("unknown keys and malformed lines are config errors") {
  CHECK_THROWS_AS(Config::Parse("dleta = 0.3\n"), ConfigError);
  CHECK_THROWS_AS(Config::Parse("delta 0.3\n"), ConfigError);
  try {
    Config::Parse("k = 5\n\nbogus = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError &e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("typed getters reject bad values") {
  Config c = Config::Parse("delta = high\nk = -1\ncase_fold = maybe\n");
  CHECK_THROWS_AS(c.GetDouble("delta", 0.0), ConfigError);
  CHECK_THROWS_AS(c.GetSize("k", 1), ConfigError);
  CHECK_THROWS_AS(c.GetBool("case_fold", true), ConfigError);
}

TEST_CASE("overrides win over the file") {
  Config c = Config::Parse("delta = 0.25\n");
  c.ApplyOverride("delta=0.5");
  c.ApplyOverride("use_dist = false");
  CHECK(c.ToMatchConfig().delta == 0.5);
  CHECK_FALSE(c.ToMatchConfig().use_dist);
  CHECK_THROWS_AS(c.ApplyOverride("delta"), ConfigError);
  CHECK_THROWS_AS(c.ApplyOverride("nope=1"), ConfigError);
}

TEST_CASE("match config defaults and validation") {
  MatchConfig m = Config().ToMatchConfig();
  CHECK(m.delta == 0.25);
  CHECK(m.k == 5);
  CHECK(m.orthographic);
  CHECK_FALSE(m.phonetic);
  CHECK(m.cap_tokens == 6);
  CHECK(m.cap_total == 1000);
  CHECK_THROWS_AS(Config::Parse("delta = 2\n").ToMatchConfig(), ConfigError);
  CHECK_THROWS_AS(Config::Parse("k = 0\n").ToMatchConfig(), ConfigError);
}

TEST_CASE("relative paths resolve against the config directory") {
  Config c = Config::Load(fig::Dir() / "run.cfg");
  CHECK(c.GetPath("source_corpus") == fig::Dir() / "source.conll");
  CHECK(c.GetPath("output").empty());
  CHECK_THROWS_AS(c.RequirePath("output"), ConfigError);
  c.Set("output", "/abs/out.conll");
  CHECK(c.GetPath("output") == "/abs/out.conll");
  CHECK(c.Languages() == LanguagePair{"en", "es"});
}

TEST_CASE("missing config file is a missing-input error") {
  CHECK_THROWS_AS(Config::Load("/nonexistent/run.cfg"), MissingInputError);
}

TEST_CASE("MT client settings") {
  Config c = Config::Parse(
      "mt.endpoint = http://127.0.0.1:1/translate\nmt.batch_size = 7\nmt.backoff_ms = 10\n");
  MtClientConfig m = c.ToMtClientConfig();
  CHECK(m.endpoint == "http://127.0.0.1:1/translate");
  CHECK(m.batch_size == 7);
  CHECK(m.backoff.count() == 10);
  CHECK(m.api_key_env == "MT_API_KEY");
}

TEST_CASE("canonical form is order-independent") {
  Config a = Config::Parse("k = 5\ndelta = 0.25\n");
  Config b = Config::Parse("delta=0.25\n# x\nk=5\n");
  CHECK(a.Canonical() == b.Canonical());
  CHECK(a.Canonical() != Config::Parse("k = 4\ndelta = 0.25\n").Canonical());
}

TEST_CASE("every documented key is accepted") {
  for (const auto &[key, doc] : ConfigKeyDocs()) {
    CHECK_FALSE(doc.empty());
    CHECK_NOTHROW(Config::Parse(key + " = 1\n"));
  }
}
