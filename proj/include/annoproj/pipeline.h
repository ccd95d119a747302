#ifndef ANNOPROJ_PIPELINE_H_
#define ANNOPROJ_PIPELINE_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "annoproj/config.h"
#include "annoproj/corpus.h"
#include "annoproj/evaluation.h"
#include "annoproj/matching.h"
#include "annoproj/phonetics.h"
#include "annoproj/translation.h"

namespace annoproj {

inline constexpr const char *kVersion = "0.3.0";

// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitMissingInput = 3,
  kExitBadInput = 4,
  kExitTranslation = 5,
};

// Maps the exception currently being handled to an exit code.
int ExitCodeForCurrentException();

struct ProjectionResult {
  Corpus projected;
  std::vector<AlignmentPair> pairs;  // sentence order, then source order
  std::size_t source_entities = 0;
  std::size_t tagged_entities = 0;

  double TaggedFraction() const {
    return source_entities == 0
               ? 0.0
               : static_cast<double>(tagged_entities) / source_entities;
  }
};

// Everything the matcher needs besides the two corpora.
struct ProjectionResources {
  TranslationProvider *provider = nullptr;  // required when use_mt
  const BilingualLexicon *lexicon = nullptr;
  const G2PTable *g2p = nullptr;
  LanguagePair langs;
};

// Align, distribute and project over an index-aligned corpus pair.
// Sentence work runs on `workers` threads; the result does not depend on
// the worker count. Throws ContractError for empty or misaligned corpora.
ProjectionResult ProjectCorpus(const Corpus &source, const Corpus &target,
                               const ProjectionResources &resources,
                               const MatchConfig &config,
                               std::size_t workers = 1);

struct AblationStep {
  std::string name;
  MatchConfig config;
  std::size_t tagged = 0;
  std::size_t total = 0;
  double fraction() const {
    return total == 0 ? 0.0 : static_cast<double>(tagged) / total;
  }
};

// base (MT + orthographic), +phonetic, +copy, +gold, +dist; each step adds
// one feature to the previous one. Other settings come from `base`.
std::vector<AblationStep> AblationSchedule(const MatchConfig &base);

// Commands. Each reads its inputs from the config, writes its outputs
// atomically (removing earlier outputs of the same run on failure) and
// prints a short summary to `log`.
void RunTranslate(const Config &config, std::ostream &log);
ProjectionResult RunProject(const Config &config, std::ostream &log);
EvalReport RunEvaluate(const Config &config, std::ostream &log);
std::vector<AblationStep> RunAblate(const Config &config, std::ostream &log);

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view data);

}  // namespace annoproj

#endif  // ANNOPROJ_PIPELINE_H_
