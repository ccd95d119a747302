#include "annoproj/translation.h"

#include <algorithm>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "annoproj/error.h"
#include "annoproj/unicode.h"
#include "io_util.h"

namespace annoproj {

using ordered_json = nlohmann::ordered_json;

std::vector<std::vector<std::string>> TranslationProvider::TranslateBatch(
    const std::vector<std::string> &texts, const LanguagePair &langs) {
  std::vector<std::vector<std::string>> out;
  out.reserve(texts.size());
  for (const auto &text : texts) out.push_back(Translate(text, langs));
  return out;
}

std::vector<std::string> IdentityProvider::Translate(const std::string &text,
                                                     const LanguagePair &) {
  return {text};
}

// --- TranslationCache -------------------------------------------------------

namespace {

std::string CacheLine(const TranslationCache::Key &key,
                      const std::vector<std::string> &outs) {
  ordered_json j;
  j["src"] = key.src;
  j["sl"] = key.sl;
  j["tl"] = key.tl;
  j["outs"] = outs;
  return j.dump() + "\n";
}

}  // namespace

std::optional<std::vector<std::string>> TranslationCache::Lookup(
    const std::string &src, const LanguagePair &langs) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(Key{src, langs.source, langs.target});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void TranslationCache::Insert(const std::string &src, const LanguagePair &langs,
                              std::vector<std::string> outs) {
  std::unique_lock lock(mu_);
  Key key{src, langs.source, langs.target};
  if (journal_.is_open()) {
    journal_ << CacheLine(key, outs);
    journal_.flush();
  }
  entries_[std::move(key)] = std::move(outs);
}

std::size_t TranslationCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::map<TranslationCache::Key, std::vector<std::string>>
TranslationCache::Snapshot() const {
  std::shared_lock lock(mu_);
  return entries_;
}

void TranslationCache::Parse(std::string_view text) {
  std::map<Key, std::vector<std::string>> parsed;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError("cache entry is not a JSON object", line_no);
    }
    auto field = [&](const char *name) -> std::string {
      auto it = j.find(name);
      if (it == j.end() || !it->is_string()) {
        throw ParseError(std::string("missing string field '") + name + "'",
                         line_no);
      }
      return it->get<std::string>();
    };
    Key key{field("src"), field("sl"), field("tl")};
    auto outs_it = j.find("outs");
    if (outs_it == j.end() || !outs_it->is_array()) {
      throw ParseError("missing array field 'outs'", line_no);
    }
    std::vector<std::string> outs;
    for (const auto &o : *outs_it) {
      if (!o.is_string()) throw ParseError("non-string in 'outs'", line_no);
      outs.push_back(o.get<std::string>());
    }
    parsed[std::move(key)] = std::move(outs);
  }
  std::unique_lock lock(mu_);
  for (auto &[k, v] : parsed) entries_[k] = std::move(v);
}

std::string TranslationCache::Serialize() const {
  std::shared_lock lock(mu_);
  std::string out;
  for (const auto &[key, outs] : entries_) out += CacheLine(key, outs);
  return out;
}

void TranslationCache::Load(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path)) return;
  Parse(ReadTextFile(path));
}

void TranslationCache::Save(const std::filesystem::path &path) const {
  WriteTextFileAtomic(path, Serialize());
}

void TranslationCache::AttachJournal(const std::filesystem::path &path) {
  std::unique_lock lock(mu_);
  journal_.close();
  journal_.open(path, std::ios::binary | std::ios::app);
  if (!journal_) throw Error("cannot open cache journal " + path.string());
}

// --- CachedProvider ---------------------------------------------------------

std::vector<std::string> CachedProvider::Translate(const std::string &text,
                                                   const LanguagePair &langs) {
  if (auto hit = cache_->Lookup(text, langs)) return *hit;
  if (live_ == nullptr) {
    throw TranslationError("no cached translation for '" + text + "' (" +
                           langs.source + "->" + langs.target + ")");
  }
  std::lock_guard lock(live_mu_);
  if (auto hit = cache_->Lookup(text, langs)) return *hit;
  ++live_calls_;
  auto outs = live_->Translate(text, langs);
  cache_->Insert(text, langs, outs);
  return outs;
}

std::vector<std::vector<std::string>> CachedProvider::TranslateBatch(
    const std::vector<std::string> &texts, const LanguagePair &langs) {
  std::vector<std::vector<std::string>> out(texts.size());
  std::vector<std::string> misses;
  std::vector<std::size_t> miss_index;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (auto hit = cache_->Lookup(texts[i], langs)) {
      out[i] = std::move(*hit);
      continue;
    }
    miss_index.push_back(i);
    if (seen.insert(texts[i]).second) misses.push_back(texts[i]);
  }
  if (!misses.empty()) {
    if (live_ == nullptr) {
      throw TranslationError("no cached translation for '" + misses.front() +
                             "' (" + langs.source + "->" + langs.target + ")");
    }
    std::lock_guard lock(live_mu_);
    ++live_calls_;
    auto fresh = live_->TranslateBatch(misses, langs);
    if (fresh.size() != misses.size()) {
      throw TranslationError("provider returned " +
                             std::to_string(fresh.size()) + " results for " +
                             std::to_string(misses.size()) + " inputs");
    }
    for (std::size_t i = 0; i < misses.size(); ++i) {
      cache_->Insert(misses[i], langs, fresh[i]);
    }
    for (std::size_t i : miss_index) out[i] = *cache_->Lookup(texts[i], langs);
  }
  return out;
}

// --- BilingualLexicon -------------------------------------------------------

void BilingualLexicon::Add(const std::string &source,
                           const std::string &target) {
  entries_[source].push_back(target);
  folded_[FoldCaseUtf8(source)].push_back(target);
}

std::vector<std::string> BilingualLexicon::Lookup(const std::string &source,
                                                  bool fold_case) const {
  const auto &index = fold_case ? folded_ : entries_;
  auto it = index.find(fold_case ? FoldCaseUtf8(source) : source);
  if (it == index.end()) return {};
  return it->second;
}

BilingualLexicon ParseLexicon(std::string_view text) {
  BilingualLexicon lexicon;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!IsValidUtf8(line)) throw ParseError("invalid UTF-8", line_no);
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw ParseError("expected source<TAB>target", line_no);
    }
    lexicon.Add(std::string(line.substr(0, tab)),
                std::string(line.substr(tab + 1)));
  }
  return lexicon;
}

BilingualLexicon LoadLexicon(const std::filesystem::path &path) {
  return ParseLexicon(ReadTextFile(path));
}

std::string SerializeLexicon(const BilingualLexicon &lexicon) {
  std::string out;
  for (const auto &[source, targets] : lexicon.entries()) {
    for (const auto &t : targets) out += source + "\t" + t + "\n";
  }
  return out;
}

// --- Translation sets -------------------------------------------------------

std::string_view ChannelName(Channel channel) {
  switch (channel) {
    case Channel::kMt:
      return "mt";
    case Channel::kCopy:
      return "copy";
    case Channel::kLexicon:
      return "lexicon";
  }
  return "?";
}

bool TranslationSet::Contains(std::string_view text) const {
  return std::any_of(hypotheses.begin(), hypotheses.end(),
                     [&](const Hypothesis &h) { return h.text == text; });
}

TranslationSet BuildTranslationSet(const Entity &entity,
                                   const ChannelFlags &flags,
                                   TranslationProvider *provider,
                                   const BilingualLexicon *lexicon,
                                   const LanguagePair &langs,
                                   bool fold_lexicon_keys) {
  if (!flags.use_mt && !flags.use_copy && !flags.use_lexicon) {
    throw ContractError("translation set needs at least one channel");
  }
  TranslationSet set;
  set.entity = entity;
  std::set<std::string> seen;
  auto add = [&](const std::string &text, Channel channel) {
    if (text.empty()) return;
    if (seen.insert(FoldCaseUtf8(text)).second) {
      set.hypotheses.push_back({text, channel});
    }
  };
  if (flags.use_mt) {
    if (provider == nullptr) throw ContractError("MT channel needs a provider");
    for (const auto &t : provider->Translate(entity.surface, langs)) {
      add(t, Channel::kMt);
    }
  }
  if (flags.use_copy) add(entity.surface, Channel::kCopy);
  if (flags.use_lexicon && lexicon != nullptr) {
    for (const auto &t : lexicon->Lookup(entity.surface, fold_lexicon_keys)) {
      add(t, Channel::kLexicon);
    }
  }
  return set;
}

HypothesisTokens TokenizeTranslations(const TranslationSet &set) {
  HypothesisTokens out;
  std::set<std::string> seen;
  for (const auto &h : set.hypotheses) {
    for (auto &tok : Tokenize(h.text)) {
      if (IsPunctuationOnly(tok)) continue;
      if (seen.insert(tok).second) out.tokens.push_back(std::move(tok));
    }
  }
  return out;
}

PermutationSet PermuteTranslations(const TranslationSet &set,
                                   std::size_t cap_tokens,
                                   std::size_t cap_total) {
  if (cap_tokens < 1) throw ContractError("cap_tokens must be at least 1");
  PermutationSet out;
  std::set<std::string> seen;
  auto add = [&](std::string s) {
    if (seen.count(s) > 0) return true;
    if (out.candidates.size() >= cap_total) {
      out.truncated = true;
      return false;
    }
    seen.insert(s);
    out.candidates.push_back(std::move(s));
    return true;
  };

  std::vector<std::vector<std::string>> tokenized;
  for (const auto &h : set.hypotheses) {
    tokenized.push_back(Tokenize(h.text));
    if (tokenized.back().empty()) continue;
    add(JoinTokens(tokenized.back()));
  }
  for (const auto &tokens : tokenized) {
    if (tokens.size() < 2) continue;
    if (tokens.size() > cap_tokens) {
      out.truncated = true;
      continue;
    }
    std::vector<std::size_t> order(tokens.size());
    std::iota(order.begin(), order.end(), 0);
    // The identity ordering was added above.
    while (std::next_permutation(order.begin(), order.end())) {
      std::string s;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0) s.push_back(' ');
        s += tokens[order[i]];
      }
      if (!add(std::move(s))) return out;
    }
  }
  return out;
}

Corpus TranslateSentences(const Corpus &corpus, TranslationProvider &provider,
                          const LanguagePair &langs) {
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const auto &s : corpus.sentences) texts.push_back(JoinTokens(s.tokens));

  std::vector<std::vector<std::string>> outs;
  try {
    outs = provider.TranslateBatch(texts, langs);
  } catch (const TranslationError &) {
    // Find the first failing sentence so the error can name it.
    for (std::size_t i = 0; i < texts.size(); ++i) {
      try {
        provider.Translate(texts[i], langs);
      } catch (const TranslationError &e) {
        throw TranslationError("sentence " + std::to_string(i) + ": " +
                               e.what());
      }
    }
    throw;
  }
  if (outs.size() != texts.size()) {
    throw TranslationError("provider returned " + std::to_string(outs.size()) +
                           " results for " + std::to_string(texts.size()) +
                           " sentences");
  }

  Corpus target;
  target.id = corpus.id.empty() ? std::string() : corpus.id + "." + langs.target;
  target.sentences.reserve(texts.size());
  for (std::size_t i = 0; i < outs.size(); ++i) {
    if (outs[i].empty()) {
      throw TranslationError("sentence " + std::to_string(i) +
                             ": provider returned no translation");
    }
    TaggedSentence s;
    s.tokens = Tokenize(outs[i].front());
    if (s.tokens.empty()) {
      throw TranslationError("sentence " + std::to_string(i) +
                             ": translation is empty");
    }
    target.sentences.push_back(std::move(s));
  }
  return target;
}

}  // namespace annoproj
