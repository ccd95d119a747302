#ifndef ANNOPROJ_MT_CLIENT_H_
#define ANNOPROJ_MT_CLIENT_H_

#include <chrono>
#include <string>
#include <vector>

#include "annoproj/translation.h"

namespace annoproj {

struct MtClientConfig {
  std::string endpoint;  // e.g. https://translation.example.com/v2/translate
  std::string api_key_env = "MT_API_KEY";
  std::size_t batch_size = 50;
  int timeout_seconds = 30;
  int max_retries = 3;
  std::chrono::milliseconds backoff{500};
};

// JSON-over-HTTP machine translation client.
//
// Request:  POST <endpoint>[?key=<$api_key_env>]
//           {"q": [text...], "source": sl, "target": tl, "format": "text"}
// Response: {"data": {"translations": [{"translatedText": str}, ...]}}
//
// Inputs are sent in chunks of batch_size. Connection failures, 429 and 5xx
// responses are retried with exponential backoff; other errors throw
// TranslationError. Always wrap it in a CachedProvider.
class HttpMtClient : public TranslationProvider {
 public:
  explicit HttpMtClient(MtClientConfig config);

  std::vector<std::string> Translate(const std::string &text,
                                     const LanguagePair &langs) override;
  std::vector<std::vector<std::string>> TranslateBatch(
      const std::vector<std::string> &texts,
      const LanguagePair &langs) override;

  std::size_t requests_sent() const { return requests_; }

 private:
  std::vector<std::vector<std::string>> SendChunk(
      const std::vector<std::string> &texts, const LanguagePair &langs);

  MtClientConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  std::size_t requests_ = 0;
};

}  // namespace annoproj

#endif  // ANNOPROJ_MT_CLIENT_H_
