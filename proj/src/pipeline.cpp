#include "annoproj/pipeline.h"

#include <algorithm>
#include <iomanip>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "annoproj/error.h"
#include "annoproj/mt_client.h"
#include "annoproj/projection.h"
#include "annoproj/unicode.h"
#include "io_util.h"
#include "parallel.h"

namespace annoproj {

namespace {

using ordered_json = nlohmann::ordered_json;

// Files written by one command. Unless Commit() is called, everything
// written so far is deleted when the transaction goes out of scope.
class OutputTransaction {
 public:
  OutputTransaction() = default;
  OutputTransaction(const OutputTransaction &) = delete;
  OutputTransaction &operator=(const OutputTransaction &) = delete;
  ~OutputTransaction() {
    if (committed_) return;
    for (const auto &p : written_) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  }

  void Write(const std::filesystem::path &path, std::string_view content) {
    WriteTextFileAtomic(path, content);
    written_.push_back(path);
  }
  void Commit() { committed_ = true; }

 private:
  std::vector<std::filesystem::path> written_;
  bool committed_ = false;
};

TagSet ParsingTagSet(const Config &config) {
  std::vector<std::string> types;
  std::string spec = config.Get("tag_set", "PER,ORG,LOC,MISC");
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) types.push_back(item);
  }
  if (types.empty()) throw ConfigError("tag_set is empty");
  // Source types that are remapped must also parse.
  for (const auto &[from, to] : ParseTagMap(config.Get("tag_map"))) {
    if (std::find(types.begin(), types.end(), from) == types.end()) {
      types.push_back(from);
    }
  }
  return TagSet(std::move(types));
}

Corpus ReadCorpusAt(const Config &config, const std::filesystem::path &path,
                    const std::string &label) {
  if (!std::filesystem::exists(path)) {
    throw MissingInputError(label + " not found: " + path.string());
  }
  ConllOptions options;
  options.tag_set = ParsingTagSet(config);
  Corpus corpus = ReadConllFile(path, options);
  corpus = ApplyTagMap(corpus, ParseTagMap(config.Get("tag_map")));
  if (corpus.size() == 0) {
    throw ValidationError(label + " contains no sentences", 0, 0);
  }
  return corpus;
}

Corpus ReadCorpus(const Config &config, const std::string &key) {
  return ReadCorpusAt(config, config.RequirePath(key), key);
}

Corpus StripTags(Corpus corpus) {
  for (auto &s : corpus.sentences) s.tags.clear();
  return corpus;
}

std::filesystem::path TargetCorpusPath(const Config &config) {
  if (config.Has("target_corpus")) return config.GetPath("target_corpus");
  if (config.Get("mode", "forward") == "forward" &&
      config.Has("translated_corpus")) {
    return config.GetPath("translated_corpus");
  }
  throw MissingInputError("config key 'target_corpus' is not set");
}

Corpus ReadTargetCorpus(const Config &config) {
  return StripTags(
      ReadCorpusAt(config, TargetCorpusPath(config), "target corpus"));
}

std::string FileSha(const std::filesystem::path &path) {
  return Sha256Hex(ReadTextFile(path));
}

std::string Manifest(const Config &config, const std::string &command,
                     const std::vector<std::string> &input_keys,
                     const std::vector<std::pair<std::string, std::string>>
                         &outputs) {
  ordered_json j;
  j["tool"] = "annoproj";
  j["version"] = kVersion;
  j["command"] = command;
  j["config_sha256"] = Sha256Hex(config.Canonical());
  ordered_json inputs = ordered_json::object();
  for (const auto &key : input_keys) {
    if (!config.Has(key)) continue;
    auto path = config.GetPath(key);
    if (!std::filesystem::exists(path)) continue;
    inputs[key] = {{"path", config.Get(key)}, {"sha256", FileSha(path)}};
  }
  j["inputs"] = inputs;
  ordered_json outs = ordered_json::object();
  for (const auto &[key, content] : outputs) outs[key] = Sha256Hex(content);
  j["outputs"] = outs;
  return j.dump(2) + "\n";
}

// Translation plumbing shared by translate, project and ablate.
struct TranslationContext {
  TranslationCache cache;
  std::unique_ptr<HttpMtClient> client;
  std::unique_ptr<CachedProvider> provider;
  std::filesystem::path cache_path;

  explicit TranslationContext(const Config &config) {
    cache_path = config.GetPath("cache");
    if (!cache_path.empty()) cache.Load(cache_path);
    if (config.Has("mt.endpoint")) {
      client = std::make_unique<HttpMtClient>(config.ToMtClientConfig());
      if (!cache_path.empty()) cache.AttachJournal(cache_path);
    }
    provider = std::make_unique<CachedProvider>(&cache, client.get());
  }

  // Rewrites the cache file in compacted form if anything new arrived.
  void Flush() {
    if (provider->live_calls() == 0 || cache_path.empty()) return;
    cache.Save(cache_path);
  }
};

void PrefetchEntityTranslations(const Corpus &source,
                                TranslationProvider &provider,
                                const LanguagePair &langs) {
  std::set<std::string> unique;
  for (const auto &s : source.sentences) {
    for (const auto &e : ExtractEntities(s)) unique.insert(e.surface);
  }
  std::vector<std::string> texts(unique.begin(), unique.end());
  if (!texts.empty()) provider.TranslateBatch(texts, langs);
}

struct LoadedResources {
  std::unique_ptr<BilingualLexicon> lexicon;
  std::unique_ptr<G2PTable> g2p;
};

LoadedResources LoadResources(const Config &config, bool need_lexicon,
                              bool need_g2p) {
  LoadedResources r;
  if (need_lexicon && config.Has("lexicon")) {
    auto path = config.GetPath("lexicon");
    if (!std::filesystem::exists(path)) {
      throw MissingInputError("lexicon not found: " + path.string());
    }
    r.lexicon = std::make_unique<BilingualLexicon>(LoadLexicon(path));
  }
  if (need_g2p && config.Has("g2p_table")) {
    auto path = config.GetPath("g2p_table");
    if (!std::filesystem::exists(path)) {
      throw MissingInputError("g2p_table not found: " + path.string());
    }
    r.g2p = std::make_unique<G2PTable>(LoadG2PTable(path));
  }
  return r;
}

std::string Percent(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << v * 100.0;
  return out.str();
}

}  // namespace

int ExitCodeForCurrentException() {
  try {
    throw;
  } catch (const MissingInputError &) {
    return kExitMissingInput;
  } catch (const ConfigError &) {
    return kExitConfig;
  } catch (const ContractError &) {
    return kExitConfig;
  } catch (const ParseError &) {
    return kExitBadInput;
  } catch (const ValidationError &) {
    return kExitBadInput;
  } catch (const TranslationError &) {
    return kExitTranslation;
  } catch (...) {
    return kExitFailure;
  }
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) {
    out << std::setw(2) << static_cast<int>(digest[i]);
  }
  return out.str();
}

ProjectionResult ProjectCorpus(const Corpus &source, const Corpus &target,
                               const ProjectionResources &resources,
                               const MatchConfig &config,
                               std::size_t workers) {
  config.Validate();
  if (source.size() == 0) throw ContractError("source corpus is empty");
  if (source.size() != target.size()) {
    throw ContractError("source and target corpora differ in length: " +
                        std::to_string(source.size()) + " vs " +
                        std::to_string(target.size()));
  }
  if (config.use_mt && resources.provider == nullptr) {
    throw ContractError("MT channel enabled without a translation provider");
  }
  if (config.use_mt) {
    PrefetchEntityTranslations(source, *resources.provider, resources.langs);
  }

  const std::size_t n = source.size();
  std::vector<SentenceAlignment> alignments(n);
  ParallelFor(n, workers, [&](std::size_t i) {
    const auto &src = source.sentences[i];
    std::vector<EntityHypotheses> evidence;
    for (const auto &e : ExtractEntities(src)) {
      evidence.push_back(PrepareEntity(e, config, resources.provider,
                                       resources.lexicon, resources.langs));
    }
    alignments[i] = AlignSentence(i, src, target.sentences[i], evidence,
                                  config, resources.g2p);
  });

  if (config.use_dist) {
    TfIdfStats stats = ComputeTfIdf(target, alignments, config.case_fold);
    DistributionMatch(target, alignments, stats, config.k, workers);
  }

  ProjectionResult result;
  result.projected.id = target.id;
  result.projected.sentences.resize(n);
  ParallelFor(n, workers, [&](std::size_t i) {
    result.projected.sentences[i] =
        ProjectTags(target.sentences[i], alignments[i].pairs);
  });
  for (std::size_t i = 0; i < n; ++i) {
    result.source_entities += ExtractEntities(source.sentences[i]).size();
    result.tagged_entities += alignments[i].pairs.size();
    result.pairs.insert(result.pairs.end(), alignments[i].pairs.begin(),
                        alignments[i].pairs.end());
  }
  return result;
}

std::vector<AblationStep> AblationSchedule(const MatchConfig &base) {
  std::vector<AblationStep> steps;
  MatchConfig c = base;
  c.use_mt = true;
  c.orthographic = true;
  c.phonetic = false;
  c.use_copy = false;
  c.use_lexicon = false;
  c.use_dist = false;
  steps.push_back({"base", c});
  c.phonetic = true;
  steps.push_back({"+phonetic", c});
  c.use_copy = true;
  steps.push_back({"+copy", c});
  c.use_lexicon = true;
  steps.push_back({"+gold", c});
  c.use_dist = true;
  steps.push_back({"+dist", c});
  return steps;
}

void RunTranslate(const Config &config, std::ostream &log) {
  const std::string mode = config.Get("mode", "forward");
  LanguagePair langs = config.Languages();
  Corpus input;
  LanguagePair direction;
  if (mode == "forward") {
    input = ReadCorpus(config, "source_corpus");
    direction = langs;
  } else if (mode == "reverse") {
    input = StripTags(ReadCorpus(config, "target_corpus"));
    direction = langs.Reversed();
  } else if (mode == "parallel") {
    throw ConfigError("translate has nothing to do in parallel mode");
  } else {
    throw ConfigError("unknown mode '" + mode + "'");
  }
  auto out_path = config.RequirePath("translated_corpus");
  if (!config.Has("cache") && !config.Has("mt.endpoint")) {
    throw ConfigError("translate needs a cache, an mt.endpoint, or both");
  }

  TranslationContext tc(config);
  Corpus translated = TranslateSentences(input, *tc.provider, direction);
  if (mode == "forward" && config.ToMatchConfig().use_mt) {
    PrefetchEntityTranslations(input, *tc.provider, direction);
  }
  tc.Flush();

  std::string conll = SerializeConll(translated);
  OutputTransaction tx;
  tx.Write(out_path, conll);
  std::filesystem::path manifest = out_path;
  manifest += ".manifest.json";
  tx.Write(manifest,
           Manifest(config, "translate", {"source_corpus", "target_corpus", "cache"},
                    {{"translated_corpus", conll}}));
  tx.Commit();
  log << "translated " << translated.size() << " sentences (" << direction.source
      << "->" << direction.target << "), " << tc.provider->live_calls()
      << " live MT requests\n";
}

ProjectionResult RunProject(const Config &config, std::ostream &log) {
  MatchConfig match = config.ToMatchConfig();
  if (match.phonetic && !config.Has("g2p_table")) {
    throw ConfigError("phonetic matching needs g2p_table");
  }
  Corpus source = ReadCorpus(config, "source_corpus");
  if (!source.tagged()) throw ConfigError("source_corpus has no tag column");
  Corpus target = ReadTargetCorpus(config);
  auto out_path = config.RequirePath("output");

  TranslationContext tc(config);
  auto res = LoadResources(config, match.use_lexicon, match.phonetic);
  ProjectionResources resources{tc.provider.get(), res.lexicon.get(),
                                res.g2p.get(), config.Languages()};
  std::size_t workers = std::max<std::size_t>(1, config.GetSize("workers", 1));
  ProjectionResult result =
      ProjectCorpus(source, target, resources, match, workers);
  tc.Flush();

  std::vector<std::pair<std::string, std::string>> outputs;
  OutputTransaction tx;
  std::string conll = SerializeConll(result.projected);
  tx.Write(out_path, conll);
  outputs.emplace_back("output", conll);
  if (config.Has("alignments_out")) {
    std::vector<AlignmentRecord> records;
    for (const auto &p : result.pairs) records.push_back(ToRecord(p));
    std::string jsonl = SerializeAlignments(records);
    tx.Write(config.GetPath("alignments_out"), jsonl);
    outputs.emplace_back("alignments_out", jsonl);
  }
  std::filesystem::path manifest = config.GetPath("manifest");
  if (manifest.empty()) {
    manifest = out_path;
    manifest += ".manifest.json";
  }
  tx.Write(manifest,
           Manifest(config, "project",
                    {"source_corpus", "target_corpus", "translated_corpus",
                     "cache", "lexicon", "g2p_table"},
                    outputs));
  tx.Commit();
  log << "tagged " << result.tagged_entities << " of " << result.source_entities
      << " entities (" << Percent(result.TaggedFraction()) << " %) over "
      << result.projected.size() << " sentences\n";
  return result;
}

EvalReport RunEvaluate(const Config &config, std::ostream &log) {
  Corpus source = ReadCorpus(config, "source_corpus");
  Corpus projected = ReadCorpus(config, "output");
  EvalReport report;
  report.miss_rate = MissRate(source, projected);
  report.excess_rate = ExcessRate(source, projected);
  if (config.Has("gold_alignments")) {
    auto gold_path = config.GetPath("gold_alignments");
    auto pred_path = config.RequirePath("alignments_out");
    for (const auto &p : {gold_path, pred_path}) {
      if (!std::filesystem::exists(p)) {
        throw MissingInputError("alignment file not found: " + p.string());
      }
    }
    report.alignment =
        AlignmentPrf(LoadAlignments(pred_path), LoadAlignments(gold_path));
  }
  if (config.Has("gold_target")) {
    Corpus gold = ReadCorpus(config, "gold_target");
    report.span = NerSpanPrf(projected, gold);
  }

  std::string json = report.ToJson();
  if (config.Has("report")) {
    OutputTransaction tx;
    tx.Write(config.GetPath("report"), json);
    tx.Commit();
  } else {
    log << json;
  }
  log << report.ToTable();
  return report;
}

std::vector<AblationStep> RunAblate(const Config &config, std::ostream &log) {
  MatchConfig base = config.ToMatchConfig();
  Corpus source = ReadCorpus(config, "source_corpus");
  if (!source.tagged()) throw ConfigError("source_corpus has no tag column");
  Corpus target = ReadTargetCorpus(config);

  TranslationContext tc(config);
  auto res = LoadResources(config, true, true);
  ProjectionResources resources{tc.provider.get(), res.lexicon.get(),
                                res.g2p.get(), config.Languages()};
  std::size_t workers = std::max<std::size_t>(1, config.GetSize("workers", 1));

  auto steps = AblationSchedule(base);
  for (auto &step : steps) {
    auto result = ProjectCorpus(source, target, resources, step.config, workers);
    step.tagged = result.tagged_entities;
    step.total = result.source_entities;
  }
  tc.Flush();

  ordered_json j = ordered_json::array();
  for (const auto &s : steps) {
    j.push_back({{"setting", s.name},
                 {"tagged", s.tagged},
                 {"total", s.total},
                 {"fraction", s.fraction()}});
  }
  if (config.Has("ablation_report")) {
    OutputTransaction tx;
    tx.Write(config.GetPath("ablation_report"), j.dump(2) + "\n");
    tx.Commit();
  }
  log << std::left << std::setw(12) << "setting" << std::right << std::setw(12)
      << "% entities" << "\n";
  for (const auto &s : steps) {
    log << std::left << std::setw(12) << s.name << std::right << std::setw(12)
        << Percent(s.fraction()) << "\n";
  }
  return steps;
}

}  // namespace annoproj
