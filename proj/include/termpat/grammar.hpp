#pragma once

#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termpat/corpus.hpp"

namespace termpat {

enum class PatternKind { Basic, Compound, Variant, Phrase };

std::string_view kind_name(PatternKind kind);
std::optional<PatternKind> parse_kind_name(std::string_view name);

inline constexpr int kUnbounded = -1;

struct Pattern;

// One position of a tag expression, repeated between min_repeat and
// max_repeat times.
//
//   Tags   matches one token whose tag is in `tags` (a literal tag or a class)
//   Group  matches any one of `alternatives`, each a short tag sequence
//   Ref    matches whatever the referenced pattern matches, under its cap
struct Atom {
  enum class Kind { Tags, Group, Ref };

  Kind kind = Kind::Tags;
  std::string name;
  TagSet tags;
  std::vector<std::vector<Atom>> alternatives;
  std::shared_ptr<const Pattern> target;
  int min_repeat = 1;
  int max_repeat = 1;

  friend bool operator==(const Atom& a, const Atom& b);
};

using TagExpr = std::vector<Atom>;

std::size_t min_length(const TagExpr& expr);
// nullopt when the expression is unbounded.
std::optional<std::size_t> max_length(const TagExpr& expr);
std::string render_expr(const TagExpr& expr);

struct Pattern {
  std::string name;
  PatternKind kind = PatternKind::Basic;
  TagExpr expr;
  std::size_t max_tokens = 0;
  // When set, an accepted span must contain at least one token in this set.
  std::optional<TagSet> require;
  std::string require_name;
  std::size_t priority = 0;  // lower is tried earlier; equals declaration order

  std::size_t min_tokens() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct NamedClass {
  std::string name;
  TagSet tags;
  std::vector<std::string> members;  // as declared, for dumping

  friend bool operator==(const NamedClass&, const NamedClass&) = default;
};

struct NamedGroup {
  std::string name;
  std::vector<TagExpr> alternatives;

  friend bool operator==(const NamedGroup&, const NamedGroup&) = default;
};

// Ordered pattern collection. Construction validates every invariant and
// assigns priorities from declaration order.
class Grammar {
 public:
  Grammar() = default;
  Grammar(std::vector<NamedClass> classes, std::vector<NamedGroup> groups,
          std::vector<Pattern> patterns);

  const std::vector<Pattern>& patterns() const { return patterns_; }
  const std::vector<NamedClass>& classes() const { return classes_; }
  const std::vector<NamedGroup>& groups() const { return groups_; }
  const Pattern* find(std::string_view name) const;

  // Shortest length any BASIC pattern can match; 0 without BASIC patterns.
  std::size_t min_basic_length() const;
  std::size_t max_basic_length() const;

  // Copy with every cap lowered to `cap`; patterns that can no longer match
  // are dropped.
  Grammar with_max_tokens(std::size_t cap) const;

  friend bool operator==(const Grammar&, const Grammar&) = default;

 private:
  std::vector<NamedClass> classes_;
  std::vector<NamedGroup> groups_;
  std::vector<Pattern> patterns_;
};

Grammar builtin_japanese_grammar();

Grammar load_grammar(std::istream& in);
Grammar load_grammar_string(std::string_view text);
Grammar load_grammar_file(const std::string& path);

// Grammar file text; load_grammar(dump_grammar(g)) == g.
std::string dump_grammar(const Grammar& g);

}  // namespace termpat
