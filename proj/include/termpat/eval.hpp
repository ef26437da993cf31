#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "termpat/corpus.hpp"
#include "termpat/matcher.hpp"
#include "termpat/term_bank.hpp"

namespace termpat {

// Acceptance of a gold term list by the grammar, whole-term only.
struct CoverageReport {
  std::size_t total_terms = 0;
  std::size_t one_word_terms = 0;
  std::size_t phrasal_terms = 0;
  std::size_t accepted_terms = 0;
  double one_word_rate = 0.0;
  double phrasal_rate = 0.0;
  double coverage_rate = 0.0;
  std::map<std::string, std::size_t> per_pattern;

  static CoverageReport from_counts(std::size_t total, std::size_t one_word,
                                    std::size_t phrasal, std::size_t accepted);
};

// Extracted keys against a gold key list. The two hit rates are not recall:
// the full terminology of the domain is unknown.
struct ExtractionReport {
  std::size_t extracted_count = 0;
  std::size_t gold_total = 0;
  std::size_t gold_in_text = 0;
  std::size_t gold_one_word = 0;  // one-word gold keys among those in text
  std::size_t upper_bound = 0;    // gold_in_text - gold_one_word
  std::size_t correct_count = 0;
  std::optional<double> precision;  // absent when nothing was extracted
  double hit_rate_all = 0.0;
  std::optional<double> hit_rate_upper;  // absent when upper_bound is 0

  static ExtractionReport from_counts(std::size_t extracted, std::size_t gold_total,
                                      std::size_t gold_in_text, std::size_t gold_one_word,
                                      std::size_t correct);
};

// Every sentence of a parsed gold file is one term.
std::vector<Sentence> gold_terms(const Corpus& gold_file);

CoverageReport coverage_eval(const Matcher& m, std::span<const Sentence> gold);
CoverageReport coverage_eval(const Grammar& g, std::span<const Sentence> gold);

// True iff the key's lemmas occur as contiguous tokens of one sentence.
// Corpus NO tokens inside the span are transparent.
bool contained_in_text(const TermKey& key, const Corpus& corpus);

ExtractionReport extraction_eval(std::span<const TermKey> extracted,
                                 std::span<const Sentence> gold, const Corpus& corpus);

// num/den as a percentage with one decimal, rounded half-up: 2890/4206 -> "68.7".
std::string format_percent(std::uint64_t num, std::uint64_t den);

}  // namespace termpat
