#include "termpat/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "termpat/error.hpp"
#include "text_util.hpp"

namespace termpat {

std::string_view kind_name(PatternKind kind) {
  switch (kind) {
    case PatternKind::Basic: return "BASIC";
    case PatternKind::Compound: return "COMPOUND";
    case PatternKind::Variant: return "VARIANT";
    case PatternKind::Phrase: return "PHRASE";
  }
  return "BASIC";
}

std::optional<PatternKind> parse_kind_name(std::string_view name) {
  if (name == "BASIC") return PatternKind::Basic;
  if (name == "COMPOUND") return PatternKind::Compound;
  if (name == "VARIANT") return PatternKind::Variant;
  if (name == "PHRASE") return PatternKind::Phrase;
  return std::nullopt;
}

bool operator==(const Atom& a, const Atom& b) {
  return a.kind == b.kind && a.name == b.name && a.tags == b.tags &&
         a.alternatives == b.alternatives && a.min_repeat == b.min_repeat &&
         a.max_repeat == b.max_repeat;
}

namespace {

std::size_t atom_min(const Atom& atom) {
  switch (atom.kind) {
    case Atom::Kind::Tags: return 1;
    case Atom::Kind::Group: {
      std::size_t best = SIZE_MAX;
      for (const auto& alt : atom.alternatives) best = std::min(best, min_length(alt));
      return best == SIZE_MAX ? 0 : best;
    }
    case Atom::Kind::Ref: return atom.target ? atom.target->min_tokens() : 0;
  }
  return 0;
}

std::optional<std::size_t> atom_max(const Atom& atom) {
  switch (atom.kind) {
    case Atom::Kind::Tags: return 1;
    case Atom::Kind::Group: {
      std::size_t best = 0;
      for (const auto& alt : atom.alternatives) {
        auto m = max_length(alt);
        if (!m) return std::nullopt;
        best = std::max(best, *m);
      }
      return best;
    }
    case Atom::Kind::Ref: return atom.target ? atom.target->max_tokens : 0;
  }
  return 0;
}

std::string render_quantifier(int lo, int hi) {
  if (lo == 1 && hi == 1) return "";
  if (lo == 1 && hi == kUnbounded) return "+";
  if (lo == 0 && hi == kUnbounded) return "*";
  if (hi == kUnbounded) return "{" + std::to_string(lo) + ",}";
  if (lo == hi) return "{" + std::to_string(lo) + "}";
  return "{" + std::to_string(lo) + "," + std::to_string(hi) + "}";
}

void validate_pattern(const Pattern& p, std::size_t line) {
  const std::size_t lo = p.min_tokens();
  if (lo == 0) {
    throw GrammarError(line, "pattern '" + p.name + "' can match an empty sequence");
  }
  if (p.max_tokens < 2) {
    throw GrammarError(line, "pattern '" + p.name + "': max must be at least 2");
  }
  if (p.max_tokens < lo) {
    throw GrammarError(line, "pattern '" + p.name + "': max " +
                                 std::to_string(p.max_tokens) +
                                 " is below its minimum length " + std::to_string(lo));
  }
}

}  // namespace

std::size_t min_length(const TagExpr& expr) {
  std::size_t total = 0;
  for (const auto& atom : expr) {
    total += atom_min(atom) * static_cast<std::size_t>(atom.min_repeat);
  }
  return total;
}

std::optional<std::size_t> max_length(const TagExpr& expr) {
  std::size_t total = 0;
  for (const auto& atom : expr) {
    auto m = atom_max(atom);
    if (!m) return std::nullopt;
    if (atom.max_repeat == kUnbounded) {
      if (*m > 0) return std::nullopt;
      continue;
    }
    total += *m * static_cast<std::size_t>(atom.max_repeat);
  }
  return total;
}

std::string render_expr(const TagExpr& expr) {
  std::string out;
  for (const auto& atom : expr) {
    if (!out.empty()) out += ' ';
    if (atom.kind == Atom::Kind::Ref) {
      out += '<' + atom.name + '>';
    } else {
      out += atom.name;
    }
    out += render_quantifier(atom.min_repeat, atom.max_repeat);
  }
  return out;
}

std::size_t Pattern::min_tokens() const { return min_length(expr); }

// ---------------------------------------------------------------------------
// Grammar

Grammar::Grammar(std::vector<NamedClass> classes, std::vector<NamedGroup> groups,
                 std::vector<Pattern> patterns)
    : classes_(std::move(classes)), groups_(std::move(groups)), patterns_(std::move(patterns)) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    auto& p = patterns_[i];
    if (!names.insert(p.name).second) {
      throw GrammarError(0, "duplicate pattern name '" + p.name + "'");
    }
    validate_pattern(p, 0);
    p.priority = i;
  }
}

const Pattern* Grammar::find(std::string_view name) const {
  for (const auto& p : patterns_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::size_t Grammar::min_basic_length() const {
  std::size_t best = 0;
  for (const auto& p : patterns_) {
    if (p.kind != PatternKind::Basic) continue;
    std::size_t lo = std::max<std::size_t>(2, p.min_tokens());
    best = best == 0 ? lo : std::min(best, lo);
  }
  return best;
}

std::size_t Grammar::max_basic_length() const {
  std::size_t best = 0;
  for (const auto& p : patterns_) {
    if (p.kind == PatternKind::Basic) best = std::max(best, p.max_tokens);
  }
  return best;
}

Grammar Grammar::with_max_tokens(std::size_t cap) const {
  std::vector<Pattern> kept;
  for (const auto& p : patterns_) {
    if (p.min_tokens() > cap) continue;
    Pattern q = p;
    q.max_tokens = std::min(q.max_tokens, cap);
    kept.push_back(std::move(q));
  }
  return Grammar(classes_, groups_, std::move(kept));
}

// ---------------------------------------------------------------------------
// Built-in inventory

namespace {

Atom tags_atom(std::string name, TagSet tags, int lo = 1, int hi = 1) {
  Atom a;
  a.kind = Atom::Kind::Tags;
  a.name = std::move(name);
  a.tags = tags;
  a.min_repeat = lo;
  a.max_repeat = hi;
  return a;
}

Atom tag_atom(Tag t) { return tags_atom(std::string(tag_name(t)), TagSet{t}); }

Pattern make_pattern(std::string name, PatternKind kind, std::size_t max_tokens, TagExpr expr) {
  Pattern p;
  p.name = std::move(name);
  p.kind = kind;
  p.max_tokens = max_tokens;
  p.expr = std::move(expr);
  return p;
}

}  // namespace

Grammar builtin_japanese_grammar() {
  const TagSet nounish{Tag::N, Tag::VN, Tag::AN};
  auto noun = [&](int lo = 1, int hi = 1) { return tags_atom("NOUNISH", nounish, lo, hi); };
  const auto pfx = tag_atom(Tag::PFX);
  const auto sfx = tag_atom(Tag::SFX);
  const auto num = tag_atom(Tag::NUM);

  std::vector<NamedClass> classes = {{"NOUNISH", nounish, {"N", "VN", "AN"}}};

  // Element shapes; a bare noun is included so that Number-Suffix can be
  // followed by a head noun.
  NamedGroup element{"ELEMENT",
                     {{noun(), noun()},
                      {pfx, noun()},
                      {noun(), sfx},
                      {num, sfx},
                      {num},
                      {tag_atom(Tag::SYM)},
                      {noun()}}};

  Atom elements;
  elements.kind = Atom::Kind::Group;
  elements.name = element.name;
  elements.alternatives = element.alternatives;
  elements.max_repeat = kUnbounded;

  Pattern elem = make_pattern("ELEM", PatternKind::Compound, 9, {elements});
  elem.require = nounish;
  elem.require_name = "NOUNISH";
  elem.priority = 9;

  Atom side;
  side.kind = Atom::Kind::Ref;
  side.name = "ELEM";
  side.target = std::make_shared<const Pattern>(elem);

  using K = PatternKind;
  std::vector<Pattern> patterns = {
      make_pattern("PHR", K::Phrase, 19, {side, tag_atom(Tag::NO), side}),
      make_pattern("BT4", K::Basic, 3, {noun(), tag_atom(Tag::SFX_STEM), noun()}),
      make_pattern("BT8", K::Basic, 3, {tag_atom(Tag::ADJ), tag_atom(Tag::SFX_NOM), noun()}),
      make_pattern("BT1", K::Basic, 2, {noun(), noun()}),
      make_pattern("BT2", K::Basic, 2, {pfx, noun()}),
      make_pattern("BT3", K::Basic, 2, {noun(), sfx}),
      make_pattern("BT5", K::Basic, 2, {tag_atom(Tag::V_INF), noun()}),
      make_pattern("BT6", K::Basic, 2, {tag_atom(Tag::V_INF), sfx}),
      make_pattern("BT7", K::Basic, 2, {tag_atom(Tag::A_INF), noun()}),
      elem,
      make_pattern("CT-IW", K::Variant, 9, {pfx, noun(), sfx, noun(0, kUnbounded)}),
      make_pattern("CT-WJ1", K::Variant, 9,
                   {tag_atom(Tag::ADJ), tag_atom(Tag::SFX_NOM), noun(1, kUnbounded)}),
      make_pattern("CT-WJ3", K::Variant, 3, {noun(), tag_atom(Tag::V_INF), noun()}),
      make_pattern("CT-WJ2", K::Variant, 3, {noun(), tag_atom(Tag::V_INF), sfx}),
  };
  return Grammar(std::move(classes), {std::move(element)}, std::move(patterns));
}

// ---------------------------------------------------------------------------
// Grammar file loader

namespace {

struct ClassDecl {
  std::vector<std::string> members;
  std::size_t line;
};

struct GroupDecl {
  std::vector<std::string> alternatives;
  std::size_t line;
};

struct PatternDecl {
  std::string name;
  PatternKind kind;
  std::optional<std::size_t> max_tokens;
  std::string require;
  std::string expr;
  std::size_t line;
};

std::size_t parse_count(std::string_view text, std::size_t line, std::string_view what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw GrammarError(line, "invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

class Resolver {
 public:
  std::map<std::string, ClassDecl, std::less<>> class_decls;
  std::map<std::string, GroupDecl, std::less<>> group_decls;
  std::vector<PatternDecl> pattern_decls;

  TagSet resolve_class(std::string_view name, std::size_t line) {
    if (auto it = classes_.find(name); it != classes_.end()) return it->second;
    auto decl = class_decls.find(name);
    if (!in_progress_.insert("class:" + std::string(name)).second) {
      throw GrammarError(line, "class '" + std::string(name) + "' refers to itself");
    }
    TagSet set;
    for (const auto& m : decl->second.members) {
      if (auto tag = parse_tag_name(m)) {
        set.insert(*tag);
      } else if (class_decls.count(m)) {
        for (Tag t : resolve_class(m, decl->second.line).tags()) set.insert(t);
      } else {
        throw GrammarError(decl->second.line, "unknown tag name '" + m + "'");
      }
    }
    classes_.emplace(std::string(name), set);
    return set;
  }

  const std::vector<TagExpr>& resolve_group(std::string_view name, std::size_t line) {
    if (auto it = groups_.find(name); it != groups_.end()) return it->second;
    if (!in_progress_.insert("group:" + std::string(name)).second) {
      throw GrammarError(line, "group '" + std::string(name) + "' refers to itself");
    }
    const auto& decl = group_decls.find(name)->second;
    std::vector<TagExpr> alts;
    for (const auto& text : decl.alternatives) {
      TagExpr e = parse_expr(text, decl.line);
      if (min_length(e) == 0) {
        throw GrammarError(decl.line, "group '" + std::string(name) + "' has an empty alternative");
      }
      alts.push_back(std::move(e));
    }
    return groups_.emplace(std::string(name), std::move(alts)).first->second;
  }

  std::shared_ptr<const Pattern> resolve_pattern(std::string_view name, std::size_t line) {
    if (auto it = patterns_.find(name); it != patterns_.end()) return it->second;
    auto decl_it = std::find_if(pattern_decls.begin(), pattern_decls.end(),
                                [&](const PatternDecl& d) { return d.name == name; });
    if (decl_it == pattern_decls.end()) {
      throw GrammarError(line, "unknown pattern '" + std::string(name) + "'");
    }
    if (!in_progress_.insert("pattern:" + std::string(name)).second) {
      throw GrammarError(line, "pattern '" + std::string(name) + "' refers to itself");
    }
    const PatternDecl& decl = *decl_it;
    Pattern p;
    p.name = decl.name;
    p.kind = decl.kind;
    p.expr = parse_expr(decl.expr, decl.line);
    p.priority = static_cast<std::size_t>(decl_it - pattern_decls.begin());
    if (decl.max_tokens) {
      p.max_tokens = *decl.max_tokens;
    } else if (auto hi = max_length(p.expr)) {
      p.max_tokens = *hi;
    } else {
      throw GrammarError(decl.line, "pattern '" + p.name + "' is unbounded and needs max=");
    }
    if (!decl.require.empty()) {
      if (auto tag = parse_tag_name(decl.require)) {
        p.require = TagSet{*tag};
      } else if (class_decls.count(decl.require)) {
        p.require = resolve_class(decl.require, decl.line);
      } else {
        throw GrammarError(decl.line, "unknown tag name '" + decl.require + "'");
      }
      p.require_name = decl.require;
    }
    validate_pattern(p, decl.line);
    auto shared = std::make_shared<const Pattern>(std::move(p));
    patterns_.emplace(std::string(name), shared);
    return shared;
  }

  TagExpr parse_expr(std::string_view text, std::size_t line) {
    TagExpr expr;
    for (auto piece : detail::split_ws(text)) expr.push_back(parse_atom(piece, line));
    if (expr.empty()) throw GrammarError(line, "empty expression");
    return expr;
  }

 private:
  Atom parse_atom(std::string_view piece, std::size_t line) {
    Atom atom;
    std::string_view name = piece;
    std::string_view quant;
    if (piece.starts_with('<')) {
      auto close = piece.find('>');
      if (close == std::string_view::npos) {
        throw GrammarError(line, "unterminated pattern reference '" + std::string(piece) + "'");
      }
      name = piece.substr(1, close - 1);
      quant = piece.substr(close + 1);
      atom.kind = Atom::Kind::Ref;
    } else {
      auto q = piece.find_first_of("+*{");
      if (q != std::string_view::npos) {
        name = piece.substr(0, q);
        quant = piece.substr(q);
      }
    }
    parse_quantifier(quant, atom, line);
    atom.name = std::string(name);

    if (atom.kind == Atom::Kind::Ref) {
      atom.target = resolve_pattern(name, line);
    } else if (auto tag = parse_tag_name(name)) {
      atom.tags = TagSet{*tag};
    } else if (class_decls.count(name)) {
      atom.tags = resolve_class(name, line);
    } else if (group_decls.count(name)) {
      atom.kind = Atom::Kind::Group;
      atom.alternatives = resolve_group(name, line);
    } else {
      throw GrammarError(line, "unknown tag name '" + std::string(name) + "'");
    }
    return atom;
  }

  static void parse_quantifier(std::string_view q, Atom& atom, std::size_t line) {
    if (q.empty()) return;
    if (q == "+") {
      atom.max_repeat = kUnbounded;
    } else if (q == "*") {
      atom.min_repeat = 0;
      atom.max_repeat = kUnbounded;
    } else if (q.front() == '{' && q.back() == '}') {
      auto body = q.substr(1, q.size() - 2);
      auto comma = body.find(',');
      if (comma == std::string_view::npos) {
        atom.min_repeat = atom.max_repeat =
            static_cast<int>(parse_count(body, line, "repetition"));
      } else {
        atom.min_repeat = static_cast<int>(parse_count(body.substr(0, comma), line, "repetition"));
        auto hi = body.substr(comma + 1);
        atom.max_repeat = hi.empty() ? kUnbounded
                                     : static_cast<int>(parse_count(hi, line, "repetition"));
        if (atom.max_repeat != kUnbounded && atom.max_repeat < atom.min_repeat) {
          throw GrammarError(line, "repetition bounds out of order");
        }
      }
      if (atom.max_repeat == 0) throw GrammarError(line, "repetition of zero");
    } else {
      throw GrammarError(line, "invalid quantifier '" + std::string(q) + "'");
    }
  }

  std::map<std::string, TagSet, std::less<>> classes_;
  std::map<std::string, std::vector<TagExpr>, std::less<>> groups_;
  std::map<std::string, std::shared_ptr<const Pattern>, std::less<>> patterns_;
  std::set<std::string> in_progress_;
};

// "NAME = a | b | c"
std::pair<std::string, std::vector<std::string>> parse_definition(std::string_view body,
                                                                  std::size_t line) {
  auto eq = body.find('=');
  if (eq == std::string_view::npos) throw GrammarError(line, "expected 'NAME = ...'");
  std::string name(detail::trim(body.substr(0, eq)));
  if (!valid_name(name)) throw GrammarError(line, "invalid name '" + name + "'");
  std::vector<std::string> items;
  for (auto alt : detail::split(body.substr(eq + 1), '|')) {
    auto t = detail::trim(alt);
    if (t.empty()) throw GrammarError(line, "empty alternative in '" + name + "'");
    items.emplace_back(t);
  }
  return {std::move(name), std::move(items)};
}

}  // namespace

Grammar load_grammar(std::istream& in) {
  Resolver r;
  std::vector<std::string> class_order, group_order;
  std::set<std::string> names;
  std::string raw;
  std::size_t lineno = 0;

  auto claim_name = [&](const std::string& name, std::size_t line) {
    if (parse_tag_name(name)) throw GrammarError(line, "'" + name + "' shadows a tag name");
    if (!names.insert(name).second) throw GrammarError(line, "duplicate name '" + name + "'");
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;

    if (line.starts_with("class ")) {
      auto [name, members] = parse_definition(line.substr(6), lineno);
      for (const auto& m : members) {
        if (detail::split_ws(m).size() != 1) {
          throw GrammarError(lineno, "class members must be single tags");
        }
      }
      claim_name(name, lineno);
      class_order.push_back(name);
      r.class_decls.emplace(name, ClassDecl{std::move(members), lineno});
    } else if (line.starts_with("group ")) {
      auto [name, alts] = parse_definition(line.substr(6), lineno);
      claim_name(name, lineno);
      group_order.push_back(name);
      r.group_decls.emplace(name, GroupDecl{std::move(alts), lineno});
    } else if (line.starts_with("pattern ")) {
      auto colon = line.find(':');
      if (colon == std::string_view::npos) {
        throw GrammarError(lineno, "expected ':' before the pattern expression");
      }
      auto header = detail::split_ws(line.substr(8, colon - 8));
      if (header.empty()) throw GrammarError(lineno, "missing pattern name");
      PatternDecl decl{std::string(header[0]), PatternKind::Basic, std::nullopt, "",
                       std::string(detail::trim(line.substr(colon + 1))), lineno};
      if (!valid_name(decl.name)) {
        throw GrammarError(lineno, "invalid pattern name '" + decl.name + "'");
      }
      bool has_kind = false;
      for (std::size_t i = 1; i < header.size(); ++i) {
        auto eq = header[i].find('=');
        auto key = header[i].substr(0, eq);
        auto value = eq == std::string_view::npos ? std::string_view{} : header[i].substr(eq + 1);
        if (key == "kind") {
          auto kind = parse_kind_name(value);
          if (!kind) throw GrammarError(lineno, "unknown kind '" + std::string(value) + "'");
          decl.kind = *kind;
          has_kind = true;
        } else if (key == "max") {
          decl.max_tokens = parse_count(value, lineno, "max");
        } else if (key == "require") {
          decl.require = std::string(value);
        } else {
          throw GrammarError(lineno, "unknown attribute '" + std::string(header[i]) + "'");
        }
      }
      if (!has_kind) throw GrammarError(lineno, "pattern '" + decl.name + "' needs kind=");
      for (const auto& d : r.pattern_decls) {
        if (d.name == decl.name) {
          throw GrammarError(lineno, "duplicate pattern name '" + decl.name + "'");
        }
      }
      r.pattern_decls.push_back(std::move(decl));
    } else {
      throw GrammarError(lineno, "unrecognized declaration");
    }
  }

  std::vector<NamedClass> classes;
  for (const auto& name : class_order) {
    const auto& decl = r.class_decls.at(name);
    classes.push_back({name, r.resolve_class(name, decl.line), decl.members});
  }
  std::vector<NamedGroup> groups;
  for (const auto& name : group_order) {
    groups.push_back({name, r.resolve_group(name, r.group_decls.at(name).line)});
  }
  std::vector<Pattern> patterns;
  for (const auto& decl : r.pattern_decls) {
    patterns.push_back(*r.resolve_pattern(decl.name, decl.line));
  }
  return Grammar(std::move(classes), std::move(groups), std::move(patterns));
}

Grammar load_grammar_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_grammar(in);
}

Grammar load_grammar_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grammar '" + path + "'");
  return load_grammar(in);
}

std::string dump_grammar(const Grammar& g) {
  std::ostringstream out;
  for (const auto& c : g.classes()) {
    out << "class " << c.name << " =";
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      out << (i ? " | " : " ") << c.members[i];
    }
    out << '\n';
  }
  for (const auto& grp : g.groups()) {
    out << "group " << grp.name << " =";
    for (std::size_t i = 0; i < grp.alternatives.size(); ++i) {
      out << (i ? " | " : " ") << render_expr(grp.alternatives[i]);
    }
    out << '\n';
  }
  for (const auto& p : g.patterns()) {
    out << "pattern " << p.name << " kind=" << kind_name(p.kind) << " max=" << p.max_tokens;
    if (p.require) out << " require=" << p.require_name;
    out << ": " << render_expr(p.expr) << "  # priority " << p.priority << '\n';
  }
  return out.str();
}

}  // namespace termpat
