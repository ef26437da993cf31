#include "termpat/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "termpat/error.hpp"
#include "text_util.hpp"

namespace termpat {

namespace {

constexpr std::array<std::string_view, kTagCount> kTagNames = {
    "N",     "VN",    "AN",  "PFX", "SFX", "SFX_STEM", "SFX_NOM",
    "V_INF", "A_INF", "ADJ", "NUM", "SYM", "NO",       "OTHER",
};

bool carries_inflection(Tag tag) { return tag == Tag::V_INF || tag == Tag::A_INF; }

std::string_view origin_name(Origin o) {
  switch (o) {
    case Origin::IW: return "IW";
    case Origin::WJ: return "WJ";
    case Origin::Unknown: break;
  }
  return "-";
}

}  // namespace

std::string_view tag_name(Tag tag) {
  return kTagNames[static_cast<std::size_t>(tag)];
}

std::optional<Tag> parse_tag_name(std::string_view name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<Tag>(i);
  }
  return std::nullopt;
}

std::vector<Tag> TagSet::tags() const {
  std::vector<Tag> out;
  for (std::size_t i = 0; i < kTagCount; ++i) {
    if (contains(static_cast<Tag>(i))) out.push_back(static_cast<Tag>(i));
  }
  return out;
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const auto& doc : documents)
    for (const auto& s : doc.sentences) n += s.size();
  return n;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& doc : documents) n += doc.sentences.size();
  return n;
}

// ---------------------------------------------------------------------------
// TagMap

TagMap TagMap::identity() {
  TagMap map;
  for (std::size_t i = 0; i < kTagCount; ++i) {
    map.add(std::string(kTagNames[i]), static_cast<Tag>(i));
  }
  map.set_default(DefaultPolicy::Fail);
  return map;
}

void TagMap::add(std::string raw, Tag tag) { by_raw_[std::move(raw)] = tag; }

void TagMap::add(std::string raw, std::string inflection, Tag tag) {
  by_pair_[{std::move(raw), std::move(inflection)}] = tag;
}

std::optional<Tag> TagMap::lookup(std::string_view raw,
                                  std::string_view inflection) const {
  if (!inflection.empty() && !by_pair_.empty()) {
    auto it = by_pair_.find({std::string(raw), std::string(inflection)});
    if (it != by_pair_.end()) return it->second;
  }
  auto it = by_raw_.find(raw);
  if (it != by_raw_.end()) return it->second;
  return std::nullopt;
}

Tag TagMap::map(std::string_view raw, std::string_view inflection,
                bool strict) const {
  if (auto tag = lookup(raw, inflection)) return *tag;
  if (strict || default_ == DefaultPolicy::Fail) {
    throw TagMapError(0, "unmapped raw tag '" + std::string(raw) + "'");
  }
  return Tag::OTHER;
}

Tag map_tag(std::string_view raw, std::string_view inflection,
            const TagMap& map, bool strict) {
  return map.map(raw, inflection, strict);
}

TagMap TagMap::load(std::istream& in) {
  TagMap map;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = detail::strip_comment(line);
    body = detail::trim(body);
    if (body.empty()) continue;

    auto arrow = body.rfind("->");
    if (arrow == std::string_view::npos) {
      throw TagMapError(lineno, "expected 'raw_pos -> TAG'");
    }
    std::string_view lhs = detail::trim(body.substr(0, arrow));
    std::string_view rhs = detail::trim(body.substr(arrow + 2));
    if (lhs.empty()) throw TagMapError(lineno, "missing raw tag");

    if (lhs == "*") {
      if (rhs == "OTHER") {
        map.set_default(DefaultPolicy::Other);
      } else if (rhs == "FAIL") {
        map.set_default(DefaultPolicy::Fail);
      } else {
        throw TagMapError(lineno, "default must be OTHER or FAIL, got '" +
                                      std::string(rhs) + "'");
      }
      continue;
    }

    auto tag = parse_tag_name(rhs);
    if (!tag) {
      throw TagMapError(lineno, "unknown canonical tag '" + std::string(rhs) + "'");
    }
    auto tab = lhs.find('\t');
    if (tab == std::string_view::npos) {
      map.add(std::string(lhs), *tag);
    } else {
      std::string_view raw = detail::trim(lhs.substr(0, tab));
      std::string_view infl = detail::trim(lhs.substr(tab + 1));
      if (raw.empty() || infl.empty()) {
        throw TagMapError(lineno, "malformed raw_pos/inflection pair");
      }
      map.add(std::string(raw), std::string(infl), *tag);
    }
  }
  return map;
}

TagMap TagMap::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tag map '" + path + "'");
  return load(in);
}

// ---------------------------------------------------------------------------
// Corpus format

Corpus parse_tagged_stream(std::istream& in, const TagMap& map, bool strict) {
  Corpus corpus;
  std::set<std::string> seen_ids;
  Sentence current;
  std::string line;
  std::size_t lineno = 0;

  auto flush_sentence = [&] {
    if (current.empty()) return;
    corpus.documents.back().sentences.push_back(std::move(current));
    current.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;

    if (detail::trim(view).empty()) {
      flush_sentence();
      continue;
    }

    if (view.starts_with("#doc") && (view.size() == 4 || view[4] == ' ')) {
      std::string id(detail::trim(view.substr(4)));
      if (id.empty()) throw ParseError(lineno, "document directive without identifier");
      if (!seen_ids.insert(id).second) {
        throw ParseError(lineno, "duplicate document identifier '" + id + "'");
      }
      if (!corpus.documents.empty()) flush_sentence();
      corpus.documents.push_back(Document{std::move(id), {}});
      continue;
    }

    auto fields = detail::split(view, '\t');
    if (fields.size() != 4 && fields.size() != 5) {
      throw ParseError(lineno, "expected 4 tab-separated fields, got " +
                                   std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(lineno, "empty surface");
    if (fields[1].empty()) throw ParseError(lineno, "empty lemma");
    if (fields[1].find(kKeySeparator) != std::string_view::npos) {
      throw ParseError(lineno, "lemma contains the reserved key separator");
    }

    std::string_view infl = fields[3] == "-" ? std::string_view{} : fields[3];
    Tag tag;
    try {
      tag = map.map(fields[2], infl, strict);
    } catch (const TagMapError& e) {
      throw TagMapError(lineno, "unmapped raw tag '" + std::string(fields[2]) + "'");
    }

    Origin origin = Origin::Unknown;
    if (fields.size() == 5) {
      if (fields[4] == "IW") {
        origin = Origin::IW;
      } else if (fields[4] == "WJ") {
        origin = Origin::WJ;
      } else if (fields[4] != "-") {
        throw ParseError(lineno, "origin must be IW, WJ or -");
      }
    }

    if (corpus.documents.empty()) {
      seen_ids.insert("");
      corpus.documents.push_back(Document{});
    }
    current.push_back(Token{std::string(fields[0]), std::string(fields[1]), tag,
                            carries_inflection(tag) ? std::string(infl) : std::string(),
                            origin});
  }
  if (!corpus.documents.empty()) flush_sentence();
  return corpus;
}

Corpus parse_tagged_string(std::string_view text, const TagMap& map, bool strict) {
  std::istringstream in{std::string(text)};
  return parse_tagged_stream(in, map, strict);
}

void serialize_corpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& doc : corpus.documents) {
    if (!doc.id.empty()) out << "#doc " << doc.id << '\n';
    for (const auto& sentence : doc.sentences) {
      for (const auto& tok : sentence) {
        out << tok.surface << '\t' << tok.lemma << '\t' << tag_name(tok.tag) << '\t'
            << (tok.inflection.empty() ? std::string_view("-")
                                       : std::string_view(tok.inflection));
        if (tok.origin != Origin::Unknown) out << '\t' << origin_name(tok.origin);
        out << '\n';
      }
      out << '\n';
    }
  }
}

std::string serialize_corpus(const Corpus& corpus) {
  std::ostringstream out;
  serialize_corpus(corpus, out);
  return out.str();
}

}  // namespace termpat
