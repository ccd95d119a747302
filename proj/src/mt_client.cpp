#include "annoproj/mt_client.h"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "annoproj/error.h"

namespace annoproj {

HttpMtClient::HttpMtClient(MtClientConfig config) : config_(std::move(config)) {
  const std::string &url = config_.endpoint;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error("MT endpoint must be an absolute URL: '" + url + "'");
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    origin_ = url;
    path_ = "/";
  } else {
    origin_ = url.substr(0, path_start);
    path_ = url.substr(path_start);
  }
  if (config_.batch_size == 0) config_.batch_size = 1;
}

std::vector<std::string> HttpMtClient::Translate(const std::string &text,
                                                 const LanguagePair &langs) {
  return SendChunk({text}, langs).front();
}

std::vector<std::vector<std::string>> HttpMtClient::TranslateBatch(
    const std::vector<std::string> &texts, const LanguagePair &langs) {
  std::vector<std::vector<std::string>> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); i += config_.batch_size) {
    std::size_t end = std::min(texts.size(), i + config_.batch_size);
    std::vector<std::string> chunk(texts.begin() + i, texts.begin() + end);
    for (auto &r : SendChunk(chunk, langs)) out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<std::string>> HttpMtClient::SendChunk(
    const std::vector<std::string> &texts, const LanguagePair &langs) {
  nlohmann::json body;
  body["q"] = texts;
  body["source"] = langs.source;
  body["target"] = langs.target;
  body["format"] = "text";

  std::string path = path_;
  if (!config_.api_key_env.empty()) {
    if (const char *key = std::getenv(config_.api_key_env.c_str())) {
      path += (path.find('?') == std::string::npos ? "?key=" : "&key=");
      path += httplib::detail::encode_query_param(key);
    }
  }

  httplib::Client client(origin_);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(config_.backoff * (1 << (attempt - 1)));
    }
    ++requests_;
    auto res = client.Post(path, body.dump(), "application/json");
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw TranslationError("MT request failed with HTTP " +
                             std::to_string(res->status));
    }
    auto j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded() || !j.contains("data") ||
        !j["data"].contains("translations") ||
        !j["data"]["translations"].is_array()) {
      throw TranslationError("malformed MT response");
    }
    const auto &items = j["data"]["translations"];
    if (items.size() != texts.size()) {
      throw TranslationError("MT response has " + std::to_string(items.size()) +
                             " translations for " +
                             std::to_string(texts.size()) + " inputs");
    }
    std::vector<std::vector<std::string>> out;
    for (const auto &item : items) {
      if (!item.contains("translatedText") ||
          !item["translatedText"].is_string()) {
        throw TranslationError("MT response item lacks translatedText");
      }
      out.push_back({item["translatedText"].get<std::string>()});
    }
    return out;
  }
  throw TranslationError("MT request failed after " +
                         std::to_string(config_.max_retries + 1) +
                         " attempts: " + last_error);
}

}  // namespace annoproj
