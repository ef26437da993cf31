#include "termpat/eval.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "termpat/error.hpp"

namespace termpat {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

bool match_from(const std::vector<std::string>& lemmas, std::size_t ki, const Sentence& s,
                std::size_t j) {
  if (ki == lemmas.size()) return true;
  if (j == s.size()) return false;
  if (s[j].lemma == lemmas[ki] && match_from(lemmas, ki + 1, s, j + 1)) return true;
  return ki > 0 && s[j].tag == Tag::NO && match_from(lemmas, ki, s, j + 1);
}

// First-lemma index over the corpus for repeated containment queries.
class TextIndex {
 public:
  explicit TextIndex(const Corpus& corpus) {
    for (const auto& doc : corpus.documents) {
      for (const auto& s : doc.sentences) {
        for (std::size_t i = 0; i < s.size(); ++i) starts_[s[i].lemma].push_back({&s, i});
      }
    }
  }

  bool contains(const TermKey& key) const {
    auto lemmas = key.lemmas();
    auto it = starts_.find(lemmas.front());
    if (it == starts_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](const Position& p) {
      return match_from(lemmas, 0, *p.sentence, p.index);
    });
  }

 private:
  struct Position {
    const Sentence* sentence;
    std::size_t index;
  };
  std::unordered_map<std::string, std::vector<Position>> starts_;
};

}  // namespace

CoverageReport CoverageReport::from_counts(std::size_t total, std::size_t one_word,
                                           std::size_t phrasal, std::size_t accepted) {
  CoverageReport r;
  r.total_terms = total;
  r.one_word_terms = one_word;
  r.phrasal_terms = phrasal;
  r.accepted_terms = accepted;
  r.one_word_rate = ratio(one_word, total);
  r.phrasal_rate = ratio(phrasal, total);
  r.coverage_rate = ratio(accepted, total);
  return r;
}

ExtractionReport ExtractionReport::from_counts(std::size_t extracted, std::size_t gold_total,
                                               std::size_t gold_in_text,
                                               std::size_t gold_one_word, std::size_t correct) {
  ExtractionReport r;
  r.extracted_count = extracted;
  r.gold_total = gold_total;
  r.gold_in_text = gold_in_text;
  r.gold_one_word = gold_one_word;
  r.upper_bound = gold_in_text - std::min(gold_one_word, gold_in_text);
  r.correct_count = correct;
  if (extracted > 0) r.precision = ratio(correct, extracted);
  r.hit_rate_all = ratio(correct, gold_total);
  if (r.upper_bound > 0) r.hit_rate_upper = ratio(correct, r.upper_bound);
  return r;
}

std::vector<Sentence> gold_terms(const Corpus& gold_file) {
  std::vector<Sentence> out;
  for (const auto& doc : gold_file.documents) {
    out.insert(out.end(), doc.sentences.begin(), doc.sentences.end());
  }
  return out;
}

CoverageReport coverage_eval(const Matcher& m, std::span<const Sentence> gold) {
  if (gold.empty()) throw DomainError("coverage of an empty gold list");
  std::size_t one_word = 0, phrasal = 0, accepted = 0;
  std::map<std::string, std::size_t> histogram;
  for (const auto& term : gold) {
    if (term.size() == 1) ++one_word;
    if (std::any_of(term.begin(), term.end(), [](const Token& t) { return t.tag == Tag::NO; })) {
      ++phrasal;
    }
    if (auto name = m.accepts(term)) {
      ++accepted;
      ++histogram[*name];
    }
  }
  auto r = CoverageReport::from_counts(gold.size(), one_word, phrasal, accepted);
  r.per_pattern = std::move(histogram);
  return r;
}

CoverageReport coverage_eval(const Grammar& g, std::span<const Sentence> gold) {
  return coverage_eval(Matcher(g), gold);
}

bool contained_in_text(const TermKey& key, const Corpus& corpus) {
  auto lemmas = key.lemmas();
  for (const auto& doc : corpus.documents) {
    for (const auto& s : doc.sentences) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (match_from(lemmas, 0, s, i)) return true;
      }
    }
  }
  return false;
}

ExtractionReport extraction_eval(std::span<const TermKey> extracted,
                                 std::span<const Sentence> gold, const Corpus& corpus) {
  if (gold.empty()) throw DomainError("evaluation against an empty gold list");

  std::map<TermKey, std::size_t> gold_keys;  // key -> token count
  for (const auto& term : gold) gold_keys.emplace(make_key(term), term.size());

  const TextIndex index(corpus);
  std::size_t in_text = 0, one_word = 0;
  for (const auto& [key, length] : gold_keys) {
    if (!index.contains(key)) continue;
    ++in_text;
    if (length == 1) ++one_word;
  }

  const std::set<TermKey> distinct(extracted.begin(), extracted.end());
  std::size_t correct = 0;
  for (const auto& key : distinct) correct += gold_keys.count(key);

  return ExtractionReport::from_counts(distinct.size(), gold_keys.size(), in_text, one_word,
                                       correct);
}

std::string format_percent(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return "n/a";
  const std::uint64_t tenths = (2 * num * 1000 + den) / (2 * den);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

}  // namespace termpat
