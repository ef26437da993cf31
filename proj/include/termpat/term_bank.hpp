#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "termpat/corpus.hpp"
#include "termpat/grammar.hpp"
#include "termpat/matcher.hpp"

namespace termpat {

// Lemma sequence joined with kKeySeparator.
struct TermKey {
  std::string value;

  std::vector<std::string> lemmas() const;

  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

TermKey make_key(std::span<const Token> tokens);
TermKey normalize_key(const Candidate& c);

struct TermEntry {
  TermKey key;
  std::string pattern_name;
  PatternKind kind = PatternKind::Basic;
  std::size_t frequency = 0;
  // Observed surface renderings with their counts.
  std::map<std::string, std::size_t> surfaces;
  std::map<std::string, std::size_t> pattern_counts;
  // Canonical representative token sequence (minimal over all occurrences).
  std::vector<Token> tokens;
  std::optional<TermKey> basic_key;
  std::set<TermKey> variant_keys;
  std::optional<double> score;
  // Created by linking only; frequency 0.
  bool synthetic = false;

  // Most frequent surface; ties resolve to the smallest string.
  std::string surface() const;

  friend bool operator==(const TermEntry&, const TermEntry&) = default;
};

struct TermBank {
  std::map<TermKey, TermEntry> entries;
  std::size_t total_candidates = 0;

  const TermEntry* find(const TermKey& key) const;

  friend bool operator==(const TermBank&, const TermBank&) = default;
};

std::string surface_of(std::span<const Token> tokens);

TermBank aggregate(std::span<const Candidate> candidates, const Grammar& g);

// Associative, commutative merge of two partial banks built from disjoint
// candidate lists. Links and scores are not carried over.
TermBank merge_banks(const TermBank& a, const TermBank& b, const Grammar& g);

// Links every non-basic entry to the basic term found in its head-final
// window. Drops and recomputes previous links, so applying it twice is a
// no-op.
TermBank link_variants(const TermBank& bank, const Grammar& g);
TermBank link_variants(const TermBank& bank, const Matcher& m);

}  // namespace termpat
