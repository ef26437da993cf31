#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "termpat/matcher.hpp"
#include "termpat/term_bank.hpp"

namespace termpat {

// Adjacent lemma bigrams inside candidate spans.
struct PairCounts {
  std::map<std::pair<std::string, std::string>, std::uint64_t> pairs;
  std::map<std::string, std::uint64_t> left;   // lemma as first element
  std::map<std::string, std::uint64_t> right;  // lemma as second element
  std::uint64_t total = 0;

  std::uint64_t count(const std::string& w1, const std::string& w2) const;

  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

// 2x2 table for the pair (w1, w2):
//            w2    not w2
//   w1       a     b
//   not w1   c     d
struct ContingencyTable {
  std::uint64_t a = 0, b = 0, c = 0, d = 0;

  std::uint64_t total() const { return a + b + c + d; }

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

// NO tokens are skipped, so a pair bridges across the particle.
PairCounts count_pairs(std::span<const Candidate> candidates);
void merge_counts(PairCounts& into, const PairCounts& from);

ContingencyTable contingency(const std::string& w1, const std::string& w2,
                             const PairCounts& pc);

// Dunning's log-likelihood ratio, -2 log lambda, with 0 ln 0 = 0.
// Throws DomainError on an all-zero table.
double log_likelihood(const ContingencyTable& t);

// Modifier/head lemma pair a basic term is scored by: the last two
// non-particle lemmas.
std::optional<std::pair<std::string, std::string>> scoring_pair(const TermEntry& basic);

TermBank score_bank(const TermBank& bank, const PairCounts& pc);

// Entries with score >= min_llr (all entries when min_llr is absent),
// ordered by score desc, frequency desc, key asc. Unscored entries sort
// last and are dropped whenever a threshold is given.
std::vector<TermEntry> rank_and_filter(const TermBank& bank,
                                       std::optional<double> min_llr = std::nullopt);

}  // namespace termpat
