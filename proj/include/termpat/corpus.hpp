#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace termpat {

// Closed tag alphabet the grammar is written against. Raw tagger POS
// strings are collapsed onto it by a TagMap.
enum class Tag : std::uint8_t {
  N,         // nominal noun
  VN,        // deverbal (sahen) noun
  AN,        // deadjectival noun
  PFX,       // prefix word
  SFX,       // nominal suffix word
  SFX_STEM,  // suffix deriving an adjectival stem (teki)
  SFX_NOM,   // suffix nominalizing an adjective (sa)
  V_INF,     // inflected verb, not deverbal
  A_INF,     // inflected adjective, not deadjectival
  ADJ,       // adjective stem
  NUM,       // number sequence
  SYM,       // symbol sequence
  NO,        // genitive particle no
  OTHER,
};

inline constexpr std::size_t kTagCount = 14;

std::string_view tag_name(Tag tag);
std::optional<Tag> parse_tag_name(std::string_view name);

// Small set of tags, used for pattern atoms and named classes.
class TagSet {
 public:
  constexpr TagSet() = default;
  constexpr TagSet(std::initializer_list<Tag> tags) {
    for (Tag t : tags) insert(t);
  }

  constexpr void insert(Tag t) { bits_ |= bit(t); }
  constexpr bool contains(Tag t) const { return (bits_ & bit(t)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint16_t bits() const { return bits_; }
  std::vector<Tag> tags() const;

  friend constexpr bool operator==(TagSet, TagSet) = default;

 private:
  static constexpr std::uint16_t bit(Tag t) {
    return static_cast<std::uint16_t>(1u << static_cast<unsigned>(t));
  }
  std::uint16_t bits_ = 0;
};

enum class Origin : std::uint8_t { Unknown, IW, WJ };

struct Token {
  std::string surface;
  std::string lemma;
  Tag tag = Tag::OTHER;
  std::string inflection;  // empty unless tag is V_INF or A_INF
  Origin origin = Origin::Unknown;

  friend bool operator==(const Token&, const Token&) = default;
};

using Sentence = std::vector<Token>;

struct Document {
  std::string id;
  std::vector<Sentence> sentences;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Corpus {
  std::vector<Document> documents;

  std::size_t token_count() const;
  std::size_t sentence_count() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Joins term-key lemmas; rejected inside lemmas at parse time.
inline constexpr std::string_view kKeySeparator = "‖";

// Maps raw tagger POS strings (optionally paired with an inflection label)
// onto the canonical alphabet.
class TagMap {
 public:
  enum class DefaultPolicy { Other, Fail };

  TagMap() = default;

  // Every canonical tag name maps to itself; unknown tags fail.
  static TagMap identity();

  // Reads the `raw[<TAB>infl] -> TAG` line format.
  static TagMap load(std::istream& in);
  static TagMap load_file(const std::string& path);

  void add(std::string raw, Tag tag);
  void add(std::string raw, std::string inflection, Tag tag);
  void set_default(DefaultPolicy policy) { default_ = policy; }
  DefaultPolicy default_policy() const { return default_; }

  // (raw, infl) is consulted before raw alone. Throws TagMapError for an
  // unmapped tag when `strict` is set or the default policy is Fail.
  Tag map(std::string_view raw, std::string_view inflection,
          bool strict = false) const;
  std::optional<Tag> lookup(std::string_view raw,
                            std::string_view inflection) const;

 private:
  std::map<std::string, Tag, std::less<>> by_raw_;
  std::map<std::pair<std::string, std::string>, Tag> by_pair_;
  DefaultPolicy default_ = DefaultPolicy::Other;
};

Tag map_tag(std::string_view raw, std::string_view inflection,
            const TagMap& map, bool strict = false);

// Corpus file: `surface TAB lemma TAB raw_pos TAB inflection [TAB origin]`,
// blank line = sentence boundary, `#doc <id>` = document boundary.
Corpus parse_tagged_stream(std::istream& in, const TagMap& map,
                           bool strict = false);
Corpus parse_tagged_string(std::string_view text, const TagMap& map,
                           bool strict = false);

void serialize_corpus(const Corpus& corpus, std::ostream& out);
std::string serialize_corpus(const Corpus& corpus);

}  // namespace termpat
