#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "termpat/error.hpp"
#include "termpat/grammar.hpp"
#include "termpat/matcher.hpp"

using namespace termpat;
using termpat::oracle::elem_oracle;
using termpat::oracle::reference_accepts;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const CompiledPattern& compiled(const Matcher& m, std::string_view name) {
  for (const auto& cp : m.compiled()) {
    if (cp.pattern().name == name) return cp;
  }
  throw std::runtime_error("no pattern " + std::string(name));
}

std::size_t grammar_error_line(const std::string& text) {
  try {
    load_grammar_string(text);
  } catch (const GrammarError& e) {
    return e.line();
  }
  return SIZE_MAX;
}

}  // namespace

TEST_CASE("built-in inventory and priority order") {
  const Grammar g = builtin_japanese_grammar();
  std::vector<std::string> names;
  for (const auto& p : g.patterns()) names.push_back(p.name);
  const std::vector<std::string> expected = {"PHR", "BT4",   "BT8",    "BT1",    "BT2",
                                             "BT3", "BT5",   "BT6",    "BT7",    "ELEM",
                                             "CT-IW", "CT-WJ1", "CT-WJ3", "CT-WJ2"};
  CHECK(names == expected);
  for (std::size_t i = 0; i < g.patterns().size(); ++i) CHECK(g.patterns()[i].priority == i);

  const Pattern* bt4 = g.find("BT4");
  REQUIRE(bt4);
  CHECK(bt4->kind == PatternKind::Basic);
  CHECK(render_expr(bt4->expr) == "NOUNISH SFX_STEM NOUNISH");

  for (const auto& p : g.patterns()) {
    if (p.kind != PatternKind::Basic) continue;
    CHECK(p.min_tokens() >= 2);
    CHECK(p.min_tokens() <= 3);
  }
  CHECK(g.find("ELEM")->max_tokens == 9);
  CHECK(g.find("ELEM")->kind == PatternKind::Compound);
  CHECK(g.find("PHR")->kind == PatternKind::Phrase);
  CHECK(render_expr(g.find("PHR")->expr) == "<ELEM> NO <ELEM>");
  CHECK(render_expr(g.find("CT-IW")->expr) == "PFX NOUNISH SFX NOUNISH*");
  CHECK(render_expr(g.find("CT-WJ1")->expr) == "ADJ SFX_NOM NOUNISH+");
  CHECK(g.find("CT-WJ2")->kind == PatternKind::Variant);
  CHECK(g.min_basic_length() == 2);
  CHECK(g.max_basic_length() == 3);
}

TEST_CASE("load_grammar") {
  SUBCASE("single pattern") {
    Grammar g = load_grammar_string("class NOUNISH = N | VN | AN\n"
                                    "pattern BT1 kind=BASIC max=2: NOUNISH NOUNISH\n");
    CHECK(g.patterns().size() == 1);
    CHECK(g.patterns()[0].max_tokens == 2);
  }
  SUBCASE("max defaults to the bounded length") {
    Grammar g = load_grammar_string("pattern X kind=BASIC: N SFX{1,3}\n");
    CHECK(g.patterns()[0].max_tokens == 4);
  }
  SUBCASE("duplicate pattern name is reported by name") {
    CHECK_THROWS_WITH_AS(load_grammar_string("pattern A kind=BASIC: N N\n"
                                             "pattern A kind=BASIC: N SFX\n"),
                         doctest::Contains("'A'"), GrammarError);
    CHECK(grammar_error_line("pattern A kind=BASIC: N N\n\npattern A kind=BASIC: N SFX\n") == 3);
  }
  SUBCASE("unknown tag name") {
    CHECK_THROWS_WITH_AS(load_grammar_string("pattern A kind=BASIC: N NOUN\n"),
                         doctest::Contains("NOUN"), GrammarError);
    CHECK(grammar_error_line("class C = N | Q\n") == 1);
    CHECK(grammar_error_line("pattern A kind=BASIC require=Q: N N\n") == 1);
  }
  SUBCASE("max below minimum length") {
    CHECK_THROWS_WITH_AS(load_grammar_string("pattern A kind=BASIC max=2: N N N\n"),
                         doctest::Contains("below its minimum"), GrammarError);
  }
  SUBCASE("other diagnostics carry the offending line") {
    CHECK(grammar_error_line("# c\npattern A kind=BASIC: N+\n") == 2);  // unbounded, no max
    CHECK(grammar_error_line("pattern A kind=WORD: N N\n") == 1);
    CHECK(grammar_error_line("pattern A: N N\n") == 1);
    CHECK(grammar_error_line("pattern A kind=BASIC N N\n") == 1);
    CHECK(grammar_error_line("\nrule A = N\n") == 2);
    CHECK(grammar_error_line("pattern A kind=BASIC max=4: N{3,2}\n") == 1);
    CHECK(grammar_error_line("pattern A kind=BASIC max=4: N*\n") == 1);
    CHECK(grammar_error_line("class N = VN\n") == 1);
    CHECK(grammar_error_line("pattern A kind=BASIC max=4: <B> N\n") == 1);
    CHECK(grammar_error_line("pattern A kind=BASIC max=4: <A> N\n") == 1);
    CHECK(grammar_error_line("group G = N G\npattern A kind=BASIC max=4: G N\n") == 1);
    CHECK(grammar_error_line("pattern A kind=BASIC max=1: N\n") == 1);
  }
  SUBCASE("hand-written file equals the built-in inventory") {
    Grammar g = load_grammar_file(TERMPAT_SOURCE_DIR "/tests/data/builtin.grammar");
    CHECK(g == builtin_japanese_grammar());
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_grammar_file("/nonexistent.grammar"), IoError);
  }
}

TEST_CASE("dump then load is the identity") {
  const Grammar g = builtin_japanese_grammar();
  const std::string text = dump_grammar(g);
  CHECK(load_grammar_string(text) == g);
  CHECK(dump_grammar(load_grammar_string(text)) == text);
}

TEST_CASE("dump/load round-trip on fuzzed grammars") {
  std::mt19937 rng(7);
  const std::vector<std::string> atoms = {"N", "VN", "SFX", "PFX", "NUM", "NO", "C1", "C2", "G1"};
  const std::vector<std::string> quants = {"", "", "", "+", "*", "{2}", "{1,3}", "{0,2}", "{2,}"};
  auto pick = [&](const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  int loaded = 0;
  for (int iter = 0; iter < 400; ++iter) {
    std::ostringstream text;
    text << "class C1 = N | VN\nclass C2 = C1 | AN | SFX\n";
    text << "group G1 = N N | PFX C1 | NUM\n";
    int n_patterns = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int p = 0; p < n_patterns; ++p) {
      text << "pattern P" << p << " kind=" << pick({"BASIC", "COMPOUND", "VARIANT", "PHRASE"})
           << " max=" << std::uniform_int_distribution<int>(2, 12)(rng);
      if (rng() % 3 == 0) text << " require=" << pick({"N", "C1", "C2"});
      text << ":";
      int n_atoms = std::uniform_int_distribution<int>(1, 4)(rng);
      for (int a = 0; a < n_atoms; ++a) {
        if (p > 0 && rng() % 6 == 0) {
          text << " <P" << (rng() % p) << ">";
        } else {
          text << " " << pick(atoms) << pick(quants);
        }
      }
      text << "\n";
    }
    Grammar g;
    try {
      g = load_grammar_string(text.str());
    } catch (const GrammarError&) {
      continue;
    }
    ++loaded;
    REQUIRE(load_grammar_string(dump_grammar(g)) == g);
  }
  CHECK(loaded > 100);
}

TEST_CASE("compiled automata") {
  const Matcher m(builtin_japanese_grammar());
  const auto& bt1 = compiled(m, "BT1");
  const auto& elem = compiled(m, "ELEM");

  const std::vector<Tag> nn = {Tag::N, Tag::N};
  const std::vector<Tag> n = {Tag::N};
  CHECK(bt1.accepts_whole(nn));
  CHECK_FALSE(bt1.accepts_whole(n));

  CHECK(elem.accepts_whole(std::vector<Tag>{Tag::NUM, Tag::SFX, Tag::N}));
  CHECK(elem.accepts_whole(std::vector<Tag>(9, Tag::N)));
  CHECK_FALSE(elem.accepts_whole(std::vector<Tag>(10, Tag::N)));
  CHECK_FALSE(elem.accepts_whole(std::vector<Tag>{Tag::NUM, Tag::SFX}));
  CHECK_FALSE(elem.accepts_whole(std::vector<Tag>{Tag::NUM, Tag::SYM}));

  std::mt19937 rng(3);
  const auto alphabet = oracle::weighted_alphabet();
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<Tag> ten;
    for (int i = 0; i < 10; ++i) ten.push_back(oracle::random_tag(rng, alphabet));
    REQUIRE_FALSE(elem.accepts_whole(ten));
  }
}

TEST_CASE("match_at returns the longest match") {
  const Matcher m(builtin_japanese_grammar());
  CHECK(compiled(m, "BT1").match_at(std::vector<Tag>(3, Tag::N), 0) == 2);
  CHECK(compiled(m, "BT1").match_at(std::vector<Tag>(3, Tag::N), 2) == std::nullopt);
  CHECK(compiled(m, "BT1").match_at(std::vector<Tag>(3, Tag::N), 3) == std::nullopt);
  // Any noun run segments into elements, so the cap is what stops it.
  CHECK(compiled(m, "ELEM").match_at(std::vector<Tag>(11, Tag::N), 0) == 9);

  const std::vector<Tag> two_no = {Tag::N, Tag::N, Tag::NO, Tag::N,
                                   Tag::N, Tag::NO, Tag::N, Tag::N};
  CHECK(compiled(m, "PHR").match_at(two_no, 0) == 5);
  CHECK(compiled(m, "PHR").match_at(two_no, 3) == 5);
  // Number-of-noun stays unmatched.
  CHECK(compiled(m, "PHR").match_at(std::vector<Tag>{Tag::NUM, Tag::NO, Tag::N}, 0) ==
        std::nullopt);
  CHECK(compiled(m, "PHR").match_at(std::vector<Tag>{Tag::N, Tag::NO, Tag::N}, 0) == 3);
}

TEST_CASE("automata agree with the reference interpreter") {
  const Matcher m(builtin_japanese_grammar());
  std::mt19937 rng(12345);
  const auto alphabet = oracle::weighted_alphabet();
  std::uniform_int_distribution<int> len(1, 12);
  for (int iter = 0; iter < 3000; ++iter) {
    std::vector<Tag> tags;
    int n = len(rng);
    for (int i = 0; i < n; ++i) tags.push_back(oracle::random_tag(rng, alphabet));
    for (const auto& cp : m.compiled()) {
      auto accepted = cp.accepted_lengths(tags, 0);
      for (std::size_t k = 1; k <= tags.size(); ++k) {
        const bool expected = reference_accepts(cp.pattern(), std::span(tags).first(k));
        const bool got = k < accepted.size() && accepted[k];
        if (got != expected) {
          FAIL_CHECK(cp.pattern().name << " disagrees at length " << k);
        }
      }
    }
  }
}

TEST_CASE("ELEM matches exactly the element partitions up to nine tokens") {
  const Matcher m(builtin_japanese_grammar());
  const auto& elem = compiled(m, "ELEM");
  const std::vector<Tag> reduced = {Tag::N, Tag::PFX, Tag::SFX, Tag::NUM};
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 9; ++n) {
    std::vector<std::size_t> digits(n, 0);
    while (true) {
      std::vector<Tag> tags;
      for (auto d : digits) tags.push_back(reduced[d]);
      auto accepted = elem.accepted_lengths(tags, 0);
      REQUIRE(accepted[n] == elem_oracle(tags));
      ++checked;
      std::size_t i = 0;
      while (i < n && ++digits[i] == reduced.size()) digits[i++] = 0;
      if (i == n) break;
    }
  }
  CHECK(checked == 349524);

  // Wider alphabet, random sample.
  std::mt19937 rng(99);
  const std::vector<Tag> wide = {Tag::N, Tag::VN, Tag::AN, Tag::PFX, Tag::SFX, Tag::NUM,
                                 Tag::SYM, Tag::OTHER};
  for (int iter = 0; iter < 20000; ++iter) {
    std::vector<Tag> tags;
    int n = 1 + static_cast<int>(rng() % 9);
    for (int i = 0; i < n; ++i) tags.push_back(oracle::random_tag(rng, wide));
    REQUIRE(elem.accepted_lengths(tags, 0)[tags.size()] == elem_oracle(tags));
  }
}

TEST_CASE("no pattern matches a single token and PHR never spans two NO") {
  const Matcher m(builtin_japanese_grammar());
  for (std::size_t t = 0; t < kTagCount; ++t) {
    const std::vector<Tag> one = {static_cast<Tag>(t)};
    CHECK(m.accepting_pattern(one) == nullptr);
    for (const auto& cp : m.compiled()) CHECK(cp.match_at(one, 0) == std::nullopt);
  }
  std::mt19937 rng(5);
  const auto alphabet = oracle::weighted_alphabet();
  const auto& phr = compiled(m, "PHR");
  for (int iter = 0; iter < 5000; ++iter) {
    std::vector<Tag> tags;
    for (int i = 0; i < 12; ++i) tags.push_back(oracle::random_tag(rng, alphabet));
    auto accepted = phr.accepted_lengths(tags, 0);
    for (std::size_t k = 0; k < accepted.size(); ++k) {
      if (accepted[k]) REQUIRE(std::count(tags.begin(), tags.begin() + k, Tag::NO) == 1);
    }
  }
}

TEST_CASE("length cap override") {
  const Grammar g = builtin_japanese_grammar().with_max_tokens(2);
  CHECK(g.find("BT4") == nullptr);
  CHECK(g.find("CT-WJ2") == nullptr);
  CHECK(g.find("ELEM")->max_tokens == 2);
  CHECK(g.find("BT1") != nullptr);
  for (const auto& p : g.patterns()) CHECK(p.max_tokens <= 2);
}
