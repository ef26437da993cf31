#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termpat/corpus.hpp"
#include "termpat/grammar.hpp"

namespace termpat {

struct Candidate {
  std::string doc_id;
  std::size_t sentence_index = 0;
  std::size_t start = 0;
  std::size_t length = 0;
  std::string pattern_name;
  std::vector<Token> tokens;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Nondeterministic automaton for one pattern. Pattern references become
// call edges into the referenced pattern's own automaton, so the callee's
// cap and required-tag constraint still apply to the sub-span.
class CompiledPattern {
 public:
  explicit CompiledPattern(const Pattern& pattern);

  const Pattern& pattern() const { return pattern_; }

  // accepted[k] is set iff tags[start, start + k) is accepted, for
  // k <= min(limit, max_tokens, tags.size() - start).
  std::vector<bool> accepted_lengths(std::span<const Tag> tags, std::size_t start,
                                     std::size_t limit = SIZE_MAX) const;

  // Longest accepted span of at least two tokens starting at `start`.
  std::optional<std::size_t> match_at(std::span<const Tag> tags, std::size_t start) const;
  std::optional<std::size_t> match_at(std::span<const Token> tokens, std::size_t start) const;

  bool accepts_whole(std::span<const Tag> tags) const;

 private:
  struct State {
    std::vector<int> eps;
    TagSet tags;
    std::shared_ptr<const CompiledPattern> call;
    int next = -1;
  };
  struct Fragment {
    int in;
    int out;
  };

  int add_state();
  Fragment build_sequence(const TagExpr& expr);
  Fragment build_atom(const Atom& atom);
  Fragment build_once(const Atom& atom);
  void add_closure(std::vector<char>& set, int state) const;

  Pattern pattern_;
  std::vector<State> states_;
  int start_ = 0;
  int accept_ = 0;
};

CompiledPattern compile_pattern(const Pattern& pattern);

std::vector<Tag> tags_of(std::span<const Token> tokens);

// Scans under the leftmost-longest, non-overlapping policy: at each
// position the longest match over all patterns wins, ties going to the
// pattern with the lower priority value.
class Matcher {
 public:
  explicit Matcher(Grammar grammar);

  const Grammar& grammar() const { return grammar_; }
  const std::vector<CompiledPattern>& compiled() const { return compiled_; }

  std::vector<Candidate> scan_sentence(const Sentence& sentence, std::string_view doc_id,
                                       std::size_t sentence_index) const;

  // Highest-priority pattern accepting the whole sequence.
  std::optional<std::string> accepts(std::span<const Token> tokens) const;
  const Pattern* accepting_pattern(std::span<const Tag> tags,
                                   std::optional<PatternKind> kind = std::nullopt) const;

  // Candidates of every sentence in corpus order. With threads > 1,
  // sentences are scanned concurrently; the result is identical.
  std::vector<Candidate> extract_corpus(const Corpus& corpus, unsigned threads = 1) const;

 private:
  Grammar grammar_;
  std::vector<CompiledPattern> compiled_;
};

std::optional<std::size_t> match_at(const CompiledPattern& pattern,
                                    std::span<const Token> tokens, std::size_t start);
std::vector<Candidate> scan_sentence(const Grammar& g, const Sentence& sentence,
                                     std::string_view doc_id, std::size_t sentence_index);
std::optional<std::string> accepts(const Grammar& g, std::span<const Token> tokens);
std::vector<Candidate> extract_corpus(const Grammar& g, const Corpus& corpus,
                                      unsigned threads = 1);

}  // namespace termpat
