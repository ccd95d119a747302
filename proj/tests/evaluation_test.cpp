#include "annoproj/evaluation.h"

#include <nlohmann/json.hpp>

#include "annoproj/error.h"
#include "doctest.h"
#include "fig_fixture.h"
#include "generators.h"
#include "oracles.h"

using namespace annoproj;

namespace {

TaggedSentence Tagged(std::vector<std::string> tags) {
  TaggedSentence s;
  for (const auto &t : tags) {
    s.tokens.push_back("w");
    s.tags.push_back(*ParseIobTag(t));
  }
  return s;
}

Corpus Of(std::vector<TaggedSentence> s) { return {"c", std::move(s)}; }

}  // namespace

TEST_CASE("precision, recall and F1") {
  Prf p = MakePrf(2, 4, 8);
  CHECK(p.precision == 0.5);
  CHECK(p.recall == 0.25);
  CHECK(p.f1 == 2 * 0.5 * 0.25 / 0.75);
  Prf zero = MakePrf(0, 0, 3);
  CHECK(zero.precision == 0.0);
  CHECK(zero.f1 == 0.0);
}

TEST_CASE("miss rate") {
  Corpus src = Of({Tagged({"B-PER", "O", "B-LOC"}), Tagged({"B-PER", "O", "B-LOC"})});
  CHECK(MissRate(src, src) == 0.0);
  Corpus half = Of({Tagged({"B-PER", "O", "O"}), Tagged({"O", "O", "B-LOC"})});
  CHECK(MissRate(src, half) == 0.5);
  CHECK_THROWS_AS(MissRate(src, Of({})), Error);
}

TEST_CASE("excess rate") {
  Corpus src = Of({Tagged({"B-PER", "O", "O"}), Tagged({"O", "O", "O"})});
  CHECK(ExcessRate(src, src) == 0.0);
  Corpus more = Of({Tagged({"B-PER", "B-LOC", "O"}), Tagged({"O", "O", "O"})});
  CHECK(ExcessRate(src, more) == 0.5);
  // The first sentence has more target entities, the second fewer: each
  // counts toward exactly one of the two rates.
  Corpus mixed = Of({Tagged({"B-PER", "B-LOC", "B-ORG"}), Tagged({"O", "O", "O"})});
  Corpus src2 = Of({Tagged({"B-PER", "O", "O"}), Tagged({"B-PER", "O", "B-LOC"})});
  CHECK(ExcessRate(src2, mixed) == 2.0 / 3.0);
  CHECK(MissRate(src2, mixed) == 1.0);
}

TEST_CASE("alignment scores") {
  auto gold = LoadAlignments(fig::Dir() / "gold_alignments.jsonl");
  REQUIRE(gold.size() == 6);
  Prf same = AlignmentPrf(gold, gold);
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  CHECK(same.f1 == 1.0);
  Prf none = AlignmentPrf({}, gold);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);
  auto pred = gold;
  pred[0].tgt_last += 1;
  Prf one_off = AlignmentPrf(pred, gold);
  CHECK(one_off.precision == 5.0 / 6.0);
  CHECK(one_off.recall == 5.0 / 6.0);
}

TEST_CASE("alignment files round-trip and reject malformed lines") {
  auto gold = LoadAlignments(fig::Dir() / "gold_alignments.jsonl");
  CHECK(ParseAlignments(SerializeAlignments(gold)) == gold);
  try {
    ParseAlignments("{\"sent\":0,\"src_span\":[0,0],\"tgt_span\":[0,0],\"type\":\"PER\"}\n"
                    "{\"sent\":0,\"src_span\":[0],\"tgt_span\":[0,0]}\n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(ParseAlignments("{\"sent\":0,\"src_span\":[2,1],\"tgt_span\":[0,0],\"type\":\"X\"}\n"),
                  ParseError);
}

TEST_CASE("NER span F1") {
  Corpus gold = Of({Tagged({"B-PER", "I-PER", "O", "B-LOC"})});
  CHECK(NerSpanF1(gold, gold) == 1.0);
  Corpus disjoint = Of({Tagged({"O", "O", "B-ORG", "O"})});
  CHECK(NerSpanF1(disjoint, gold) == 0.0);
  Corpus wrong_type = Of({Tagged({"B-ORG", "I-ORG", "O", "B-LOC"})});
  CHECK(NerSpanF1(wrong_type, gold) == 0.5);
}

TEST_CASE("report JSON and table") {
  EvalReport r;
  r.miss_rate = 0.25;
  r.alignment = Prf{1.0, 0.5, 2.0 / 3.0};
  auto j = nlohmann::json::parse(r.ToJson());
  CHECK(j["miss_rate"] == 0.25);
  CHECK(j["alignment"]["recall"] == 0.5);
  CHECK_FALSE(j.contains("span"));
  CHECK(r.ToTable().find("miss rate") != std::string::npos);
}

TEST_CASE("property: metrics equal set and count recounts") {
  gen::Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    Corpus gold = gen::Corpus(rng, 1, 5, true);
    Corpus pred = gold;
    for (auto &s : pred.sentences) {
      if (gen::Coin(rng, 0.4)) s.tags = gen::Tags(rng, s.size());
    }
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::string>> gs, ps;
    std::size_t missing = 0, miss_den = 0, extra = 0, extra_den = 0;
    for (std::size_t s = 0; s < gold.size(); ++s) {
      std::vector<std::string> gt, pt;
      for (const auto &t : gold.sentences[s].tags) gt.push_back(t.ToString());
      for (const auto &t : pred.sentences[s].tags) pt.push_back(t.ToString());
      auto ga = oracle::Spans(gt), pa = oracle::Spans(pt);
      for (auto &[a, b, t] : ga) gs.emplace_back(s, a, b, t);
      for (auto &[a, b, t] : pa) ps.emplace_back(s, a, b, t);
      if (pa.size() <= ga.size()) {
        missing += ga.size() - pa.size();
        miss_den += ga.size();
      } else {
        extra += pa.size() - ga.size();
        extra_den += pa.size();
      }
    }
    auto [p, r, f] = oracle::SetPrf(ps, gs);
    Prf got = NerSpanPrf(pred, gold);
    CHECK(got.precision == doctest::Approx(p).epsilon(1e-12));
    CHECK(got.recall == doctest::Approx(r).epsilon(1e-12));
    CHECK(got.f1 == doctest::Approx(f).epsilon(1e-12));
    CHECK(MissRate(gold, pred) == (miss_den ? double(missing) / miss_den : 0.0));
    CHECK(ExcessRate(gold, pred) == (extra_den ? double(extra) / extra_den : 0.0));
    double mr = MissRate(gold, pred), er = ExcessRate(gold, pred);
    CHECK((mr >= 0.0 && mr <= 1.0));
    CHECK((er >= 0.0 && er <= 1.0));
  }
}
