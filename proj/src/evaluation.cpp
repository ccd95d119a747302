#include "annoproj/evaluation.h"

#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "annoproj/error.h"
#include "io_util.h"

namespace annoproj {

namespace {

void CheckAligned(const Corpus &a, const Corpus &b) {
  if (a.size() != b.size()) {
    throw Error("corpora are not index-aligned: " + std::to_string(a.size()) +
                " vs " + std::to_string(b.size()) + " sentences");
  }
}

std::vector<std::size_t> EntityCounts(const Corpus &corpus) {
  std::vector<std::size_t> counts;
  counts.reserve(corpus.size());
  for (const auto &s : corpus.sentences) {
    counts.push_back(ExtractEntities(s).size());
  }
  return counts;
}

std::size_t ReadIndex(const nlohmann::json &j, std::size_t line) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError("expected a non-negative integer", line);
  }
  return j.get<std::size_t>();
}

}  // namespace

Prf MakePrf(std::size_t correct, std::size_t predicted, std::size_t gold) {
  Prf prf;
  prf.precision = predicted == 0 ? 0.0
                                 : static_cast<double>(correct) / predicted;
  prf.recall = gold == 0 ? 0.0 : static_cast<double>(correct) / gold;
  double sum = prf.precision + prf.recall;
  prf.f1 = sum == 0.0 ? 0.0 : 2.0 * prf.precision * prf.recall / sum;
  return prf;
}

double MissRate(const Corpus &source, const Corpus &projected) {
  CheckAligned(source, projected);
  auto src = EntityCounts(source);
  auto tgt = EntityCounts(projected);
  std::size_t missing = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (tgt[i] > src[i]) continue;
    missing += src[i] - tgt[i];
    total += src[i];
  }
  return total == 0 ? 0.0 : static_cast<double>(missing) / total;
}

double ExcessRate(const Corpus &source, const Corpus &projected) {
  CheckAligned(source, projected);
  auto src = EntityCounts(source);
  auto tgt = EntityCounts(projected);
  std::size_t excess = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (tgt[i] <= src[i]) continue;
    excess += tgt[i] - src[i];
    total += tgt[i];
  }
  return total == 0 ? 0.0 : static_cast<double>(excess) / total;
}

AlignmentRecord ToRecord(const AlignmentPair &pair) {
  return {pair.sentence,     pair.source.first, pair.source.last,
          pair.target_first, pair.target_last,  pair.source.type};
}

std::vector<AlignmentRecord> ParseAlignments(std::string_view text) {
  std::vector<AlignmentRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError("alignment record is not a JSON object", line_no);
    }
    for (const char *key : {"sent", "src_span", "tgt_span", "type"}) {
      if (!j.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'", line_no);
      }
    }
    auto span = [&](const nlohmann::json &s) {
      if (!s.is_array() || s.size() != 2) {
        throw ParseError("span must be a [first, last] pair", line_no);
      }
      auto first = ReadIndex(s[0], line_no);
      auto last = ReadIndex(s[1], line_no);
      if (first > last) throw ParseError("span first > last", line_no);
      return std::pair{first, last};
    };
    if (!j["type"].is_string()) throw ParseError("type must be a string", line_no);
    AlignmentRecord r;
    r.sent = ReadIndex(j["sent"], line_no);
    std::tie(r.src_first, r.src_last) = span(j["src_span"]);
    std::tie(r.tgt_first, r.tgt_last) = span(j["tgt_span"]);
    r.type = j["type"].get<std::string>();
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<AlignmentRecord> LoadAlignments(const std::filesystem::path &path) {
  return ParseAlignments(ReadTextFile(path));
}

std::string SerializeAlignments(const std::vector<AlignmentRecord> &records) {
  std::string out;
  for (const auto &r : records) {
    nlohmann::ordered_json j;
    j["sent"] = r.sent;
    j["src_span"] = {r.src_first, r.src_last};
    j["tgt_span"] = {r.tgt_first, r.tgt_last};
    j["type"] = r.type;
    out += j.dump() + "\n";
  }
  return out;
}

Prf AlignmentPrf(const std::vector<AlignmentRecord> &pred,
                 const std::vector<AlignmentRecord> &gold) {
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t,
                         std::size_t>;
  auto key = [](const AlignmentRecord &r) {
    return Key{r.sent, r.src_first, r.src_last, r.tgt_first, r.tgt_last};
  };
  std::set<Key> p;
  std::set<Key> g;
  for (const auto &r : pred) p.insert(key(r));
  for (const auto &r : gold) g.insert(key(r));
  std::size_t correct = 0;
  for (const auto &k : p) correct += g.count(k);
  return MakePrf(correct, p.size(), g.size());
}

Prf NerSpanPrf(const Corpus &pred, const Corpus &gold) {
  CheckAligned(pred, gold);
  std::size_t correct = 0;
  std::size_t n_pred = 0;
  std::size_t n_gold = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    auto p = ExtractEntities(pred.sentences[i]);
    auto g = ExtractEntities(gold.sentences[i]);
    n_pred += p.size();
    n_gold += g.size();
    for (const auto &e : p) {
      for (const auto &h : g) {
        if (e.first == h.first && e.last == h.last && e.type == h.type) {
          ++correct;
          break;
        }
      }
    }
  }
  return MakePrf(correct, n_pred, n_gold);
}

double NerSpanF1(const Corpus &pred, const Corpus &gold) {
  return NerSpanPrf(pred, gold).f1;
}

std::string EvalReport::ToJson() const {
  nlohmann::ordered_json j;
  j["miss_rate"] = miss_rate;
  j["excess_rate"] = excess_rate;
  if (alignment) {
    j["alignment"] = {{"precision", alignment->precision},
                      {"recall", alignment->recall},
                      {"f1", alignment->f1}};
  }
  if (span) {
    j["span"] = {{"precision", span->precision},
                 {"recall", span->recall},
                 {"f1", span->f1}};
  }
  return j.dump(2) + "\n";
}

std::string EvalReport::ToTable() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  auto row = [&](const std::string &name, double v) {
    out << std::left << std::setw(22) << name << std::right << std::setw(8)
        << v * 100.0 << " %\n";
  };
  row("miss rate", miss_rate);
  row("excess rate", excess_rate);
  if (alignment) {
    row("alignment precision", alignment->precision);
    row("alignment recall", alignment->recall);
    row("alignment F1", alignment->f1);
  }
  if (span) {
    row("span precision", span->precision);
    row("span recall", span->recall);
    row("span F1", span->f1);
  }
  return out.str();
}

}  // namespace annoproj
