#ifndef ANNOPROJ_CONFIG_H_
#define ANNOPROJ_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "annoproj/matching.h"
#include "annoproj/mt_client.h"

namespace annoproj {

// Flat "key = value" run configuration. '#' starts a comment line. Keys are
// checked against a fixed vocabulary so typos fail loudly. Relative paths
// resolve against the directory of the config file.
class Config {
 public:
  Config() = default;

  static Config Parse(std::string_view text,
                      std::filesystem::path base_dir = {});
  static Config Load(const std::filesystem::path &path);

  // Throws Error for unknown keys.
  void Set(const std::string &key, const std::string &value);
  // "KEY=VALUE".
  void ApplyOverride(std::string_view assignment);

  bool Has(const std::string &key) const;
  std::string Get(const std::string &key, const std::string &fallback = {}) const;
  double GetDouble(const std::string &key, double fallback) const;
  std::size_t GetSize(const std::string &key, std::size_t fallback) const;
  bool GetBool(const std::string &key, bool fallback) const;

  // Resolved path for a key, or empty when unset.
  std::filesystem::path GetPath(const std::string &key) const;
  // Throws MissingInputError when the key is unset.
  std::filesystem::path RequirePath(const std::string &key) const;

  MatchConfig ToMatchConfig() const;
  MtClientConfig ToMtClientConfig() const;
  LanguagePair Languages() const;

  // Sorted "key=value" lines; input to the manifest hash.
  std::string Canonical() const;

  const std::map<std::string, std::string> &values() const { return values_; }
  const std::filesystem::path &base_dir() const { return base_dir_; }

 private:
  std::map<std::string, std::string> values_;
  std::filesystem::path base_dir_;
};

// Names of every accepted key.
const std::map<std::string, std::string> &ConfigKeyDocs();

}  // namespace annoproj

#endif  // ANNOPROJ_CONFIG_H_
