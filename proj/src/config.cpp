#include "annoproj/config.h"

#include <charconv>
#include <sstream>

#include "annoproj/error.h"
#include "io_util.h"

namespace annoproj {

namespace {

std::string Trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

const std::map<std::string, std::string> &ConfigKeyDocs() {
  static const std::map<std::string, std::string> docs = {
      {"mode", "forward | reverse | parallel (default forward)"},
      {"source_lang", "language code of the tagged side (default en)"},
      {"target_lang", "language code of the side being tagged"},
      {"source_corpus", "tagged CoNLL corpus whose entities are projected"},
      {"target_corpus", "untagged CoNLL corpus receiving the tags"},
      {"translated_corpus", "output of the translate command"},
      {"output", "projected CoNLL corpus written by project"},
      {"alignments_out", "aligned pairs as JSON lines (optional)"},
      {"manifest", "run manifest path (default <output>.manifest.json)"},
      {"report", "evaluation report JSON path"},
      {"ablation_report", "ablation report JSON path"},
      {"gold_alignments", "gold alignment JSON lines for evaluate"},
      {"gold_target", "gold tagged target corpus for evaluate"},
      {"cache", "translation cache (JSON lines)"},
      {"lexicon", "bilingual lexicon TSV"},
      {"g2p_table", "grapheme-to-phoneme TSV for the phonetic channel"},
      {"tag_set", "comma-separated entity types (default PER,ORG,LOC,MISC)"},
      {"tag_map", "type remapping, e.g. MISC= to drop MISC"},
      {"delta", "span score threshold (default 0.25)"},
      {"k", "top-k list size for distributional matching (default 5)"},
      {"orthographic", "orthographic matching channel (default true)"},
      {"phonetic", "phonetic matching channel (default false)"},
      {"use_mt", "MT hypotheses (default true)"},
      {"use_copy", "copy of the source entity (default true)"},
      {"use_lexicon", "lexicon hypotheses (default true)"},
      {"use_dist", "distributional matching (default true)"},
      {"case_fold", "case-insensitive comparisons (default true)"},
      {"cap_tokens", "longest hypothesis that is permuted (default 6)"},
      {"cap_total", "maximum permutations per entity (default 1000)"},
      {"workers", "worker threads (default 1)"},
      {"mt.endpoint", "MT service URL; unset means cache-only"},
      {"mt.api_key_env", "environment variable holding the API key"},
      {"mt.batch_size", "texts per MT request (default 50)"},
      {"mt.timeout", "request timeout in seconds (default 30)"},
      {"mt.max_retries", "retries on transient failures (default 3)"},
      {"mt.backoff_ms", "initial retry backoff in ms (default 500)"},
  };
  return docs;
}

Config Config::Parse(std::string_view text, std::filesystem::path base_dir) {
  Config config;
  config.base_dir_ = std::move(base_dir);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    std::string key = Trim(std::string_view(line).substr(0, eq));
    std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (ConfigKeyDocs().count(key) == 0) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
    config.values_[key] = value;
  }
  return config;
}

Config Config::Load(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path)) {
    throw MissingInputError("config file not found: " + path.string());
  }
  return Parse(ReadTextFile(path), path.parent_path());
}

void Config::Set(const std::string &key, const std::string &value) {
  if (ConfigKeyDocs().count(key) == 0) {
    throw ConfigError("unknown config key '" + key + "'");
  }
  values_[key] = value;
}

void Config::ApplyOverride(std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override must be KEY=VALUE: '" +
                      std::string(assignment) + "'");
  }
  Set(Trim(assignment.substr(0, eq)), Trim(assignment.substr(eq + 1)));
}

bool Config::Has(const std::string &key) const {
  auto it = values_.find(key);
  return it != values_.end() && !it->second.empty();
}

std::string Config::Get(const std::string &key,
                        const std::string &fallback) const {
  auto it = values_.find(key);
  return it == values_.end() || it->second.empty() ? fallback : it->second;
}

double Config::GetDouble(const std::string &key, double fallback) const {
  if (!Has(key)) return fallback;
  std::string v = Get(key);
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception &) {
    throw ConfigError("'" + key + "' must be a number, got '" + v + "'");
  }
}

std::size_t Config::GetSize(const std::string &key,
                            std::size_t fallback) const {
  if (!Has(key)) return fallback;
  std::string v = Get(key);
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("'" + key + "' must be a non-negative integer, got '" +
                      v + "'");
  }
  return out;
}

bool Config::GetBool(const std::string &key, bool fallback) const {
  if (!Has(key)) return fallback;
  std::string v = Get(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' must be a boolean, got '" + v + "'");
}

std::filesystem::path Config::GetPath(const std::string &key) const {
  if (!Has(key)) return {};
  std::filesystem::path p(Get(key));
  if (p.is_relative() && !base_dir_.empty()) p = base_dir_ / p;
  return p;
}

std::filesystem::path Config::RequirePath(const std::string &key) const {
  if (!Has(key)) throw ConfigError("config key '" + key + "' is not set");
  return GetPath(key);
}

MatchConfig Config::ToMatchConfig() const {
  MatchConfig m;
  m.delta = GetDouble("delta", m.delta);
  m.k = GetSize("k", m.k);
  m.orthographic = GetBool("orthographic", m.orthographic);
  m.phonetic = GetBool("phonetic", m.phonetic);
  m.use_mt = GetBool("use_mt", m.use_mt);
  m.use_copy = GetBool("use_copy", m.use_copy);
  m.use_lexicon = GetBool("use_lexicon", m.use_lexicon);
  m.use_dist = GetBool("use_dist", m.use_dist);
  m.case_fold = GetBool("case_fold", m.case_fold);
  m.cap_tokens = GetSize("cap_tokens", m.cap_tokens);
  m.cap_total = GetSize("cap_total", m.cap_total);
  try {
    m.Validate();
  } catch (const ContractError &e) {
    throw ConfigError(e.what());
  }
  return m;
}

MtClientConfig Config::ToMtClientConfig() const {
  MtClientConfig c;
  c.endpoint = Get("mt.endpoint");
  c.api_key_env = Get("mt.api_key_env", c.api_key_env);
  c.batch_size = GetSize("mt.batch_size", c.batch_size);
  c.timeout_seconds = static_cast<int>(GetSize("mt.timeout", c.timeout_seconds));
  c.max_retries = static_cast<int>(GetSize("mt.max_retries", c.max_retries));
  c.backoff = std::chrono::milliseconds(
      GetSize("mt.backoff_ms", static_cast<std::size_t>(c.backoff.count())));
  return c;
}

LanguagePair Config::Languages() const {
  return {Get("source_lang", "en"), Get("target_lang", "xx")};
}

std::string Config::Canonical() const {
  std::string out;
  for (const auto &[k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

}  // namespace annoproj
