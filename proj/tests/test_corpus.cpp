#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "termpat/corpus.hpp"
#include "termpat/error.hpp"

using namespace termpat;

namespace {

TagMap small_map() {
  TagMap m;
  m.add("NN", Tag::N);
  m.add("noun", Tag::N);
  m.add("noun-sahen", Tag::VN);
  m.add("particle-no", Tag::NO);
  m.add("verb", Tag::V_INF);
  m.add("verb", "stem", Tag::OTHER);
  return m;
}

Corpus random_corpus(std::mt19937& rng) {
  std::uniform_int_distribution<int> docs(0, 3), sents(0, 3), toks(1, 5), tag(0, kTagCount - 1),
      coin(0, 3);
  Corpus c;
  int n_docs = docs(rng);
  for (int d = 0; d < n_docs; ++d) {
    Document doc;
    doc.id = d == 0 && coin(rng) == 0 ? "" : "d" + std::to_string(d);
    int n_sent = sents(rng);
    for (int s = 0; s < n_sent; ++s) {
      Sentence sentence;
      int n_tok = toks(rng);
      for (int t = 0; t < n_tok; ++t) {
        Token tok;
        tok.tag = static_cast<Tag>(tag(rng));
        tok.surface = "w" + std::to_string(coin(rng)) + "語";
        tok.lemma = "l" + std::to_string(coin(rng));
        if (tok.tag == Tag::V_INF || tok.tag == Tag::A_INF) tok.inflection = "i";
        tok.origin = static_cast<Origin>(coin(rng) % 3);
        sentence.push_back(tok);
      }
      doc.sentences.push_back(sentence);
    }
    // An empty implicit document cannot be written out.
    if (doc.id.empty() && doc.sentences.empty()) doc.id = "d0";
    c.documents.push_back(doc);
  }
  return c;
}

}  // namespace

TEST_CASE("data line maps raw tag through the tag map") {
  auto c = parse_tagged_string("densi\tdensi\tNN\t-\n", small_map());
  REQUIRE(c.documents.size() == 1);
  REQUIRE(c.documents[0].sentences.size() == 1);
  const Token& t = c.documents[0].sentences[0][0];
  CHECK(t.surface == "densi");
  CHECK(t.lemma == "densi");
  CHECK(t.tag == Tag::N);
  CHECK(t.inflection.empty());
  CHECK(t.origin == Origin::Unknown);
}

TEST_CASE("empty input has no documents") {
  CHECK(parse_tagged_string("", small_map()).documents.empty());
  CHECK(parse_tagged_string("\n\n  \n", small_map()).documents.empty());
}

TEST_CASE("blank line separates sentences") {
  auto c = parse_tagged_string("a\ta\tNN\t-\n\nb\tb\tNN\t-\n", small_map());
  REQUIRE(c.documents.size() == 1);
  CHECK(c.documents[0].id.empty());
  REQUIRE(c.documents[0].sentences.size() == 2);
  CHECK(c.documents[0].sentences[0].size() == 1);
  CHECK(c.documents[0].sentences[1].size() == 1);
  CHECK(c.token_count() == 2);
}

TEST_CASE("document directives, repeated blanks and CRLF") {
  const char* text =
      "#doc abs-1\r\n"
      "a\ta\tNN\t-\r\n"
      "b\tb\tnoun-sahen\t-\r\n"
      "\r\n\r\n\r\n"
      "c\tc\tNN\t-\r\n"
      "#doc abs-2\n"
      "d\td\tNN\t-\n";
  auto c = parse_tagged_string(text, small_map());
  REQUIRE(c.documents.size() == 2);
  CHECK(c.documents[0].id == "abs-1");
  CHECK(c.documents[0].sentences.size() == 2);
  CHECK(c.documents[1].id == "abs-2");
  CHECK(c.documents[1].sentences.size() == 1);
  CHECK(c.token_count() == 4);
  CHECK(c.documents[0].sentences[0][1].tag == Tag::VN);
}

TEST_CASE("token count equals the number of data lines") {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 50; ++iter) {
    std::ostringstream text;
    std::size_t data_lines = 0;
    std::uniform_int_distribution<int> kind(0, 5);
    for (int i = 0; i < 40; ++i) {
      int k = kind(rng);
      if (k == 0) {
        text << "\n";
      } else if (k == 1 && i % 7 == 0) {
        text << "#doc id" << i << "\n";
      } else {
        text << "w\tw\tNN\t-\n";
        ++data_lines;
      }
    }
    CHECK(parse_tagged_string(text.str(), small_map()).token_count() == data_lines);
  }
}

TEST_CASE("malformed lines report their exact line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_tagged_string(text, small_map(), true);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("a\ta\tNN\t-\n\nb\tb\tNN\n") == 3);
  CHECK(line_of("a\ta\tNN\t-\tIW\textra\n") == 1);
  CHECK(line_of("a\ta\tNN\t-\n#doc\n") == 2);
  CHECK(line_of("#doc x\n#doc y\n#doc x\n") == 3);
  CHECK(line_of("a\t\tNN\t-\n") == 1);
  CHECK(line_of("a\ta\tNN\t-\n\t\t\t\nb\tb\tNN\n") == 3);
  CHECK(line_of("a\ta\tNN\t-\tXX\n") == 1);
  CHECK(line_of("a\ta‖b\tNN\t-\n") == 1);
  CHECK(line_of("a\ta\tNN\t-\nb\tb\tADV\t-\n") == 2);
}

TEST_CASE("strict mode rejects unknown raw tags, lenient maps them to OTHER") {
  const std::string text = "x\tx\tadverb\t-\n";
  CHECK_THROWS_AS(parse_tagged_string(text, small_map(), true), TagMapError);
  auto c = parse_tagged_string(text, small_map(), false);
  CHECK(c.documents[0].sentences[0][0].tag == Tag::OTHER);

  TagMap failing = small_map();
  failing.set_default(TagMap::DefaultPolicy::Fail);
  try {
    parse_tagged_string(text, failing, false);
    FAIL("expected a tag-mapping error");
  } catch (const TagMapError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("adverb") != std::string::npos);
  }
}

TEST_CASE("map_tag lookups") {
  TagMap m = small_map();
  CHECK(map_tag("noun-sahen", "", m) == Tag::VN);
  CHECK(map_tag("noun", "", m) == Tag::N);
  CHECK(map_tag("particle-no", "", m) == Tag::NO);
  // (raw, inflection) pair is consulted first.
  CHECK(map_tag("verb", "stem", m) == Tag::OTHER);
  CHECK(map_tag("verb", "ta", m) == Tag::V_INF);
  CHECK_THROWS_WITH_AS(map_tag("adverb", "", m, true), doctest::Contains("adverb"), TagMapError);
}

TEST_CASE("inflection is kept only on inflecting tags") {
  TagMap m = small_map();
  auto c = parse_tagged_string("toji-ta\ttoji\tverb\tta\nhairitsu\thairitsu\tnoun\tmizen\n", m);
  const auto& s = c.documents[0].sentences[0];
  CHECK(s[0].tag == Tag::V_INF);
  CHECK(s[0].inflection == "ta");
  CHECK(s[1].inflection.empty());
}

TEST_CASE("tag map file format") {
  std::istringstream in(
      "# comment\n"
      "noun -> N\n"
      "noun-sahen -> VN   # trailing comment\n"
      "adj\tstem -> ADJ\n"
      "adj -> A_INF\n"
      "* -> FAIL\n");
  TagMap m = TagMap::load(in);
  CHECK(m.default_policy() == TagMap::DefaultPolicy::Fail);
  CHECK(m.map("noun", "") == Tag::N);
  CHECK(m.map("noun-sahen", "") == Tag::VN);
  CHECK(m.map("adj", "stem") == Tag::ADJ);
  CHECK(m.map("adj", "i") == Tag::A_INF);
  CHECK_THROWS_AS(m.map("other", ""), TagMapError);

  auto load_error_line = [](const std::string& text) -> std::size_t {
    std::istringstream s(text);
    try {
      TagMap::load(s);
    } catch (const TagMapError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(load_error_line("noun -> N\nverb V_INF\n") == 2);
  CHECK(load_error_line("noun -> NOUN\n") == 1);
  CHECK(load_error_line("\n\n* -> MAYBE\n") == 3);
}

TEST_CASE("shipped IPADIC tag map") {
  TagMap m = TagMap::load_file(TERMPAT_SOURCE_DIR "/data/ipadic.tagmap");
  CHECK(m.map("名詞-サ変接続", "") == Tag::VN);
  CHECK(m.map("名詞-接尾-形容動詞語幹", "") == Tag::SFX_STEM);
  CHECK(m.map("形容詞-自立", "ガル接続") == Tag::ADJ);
  CHECK(m.map("形容詞-自立", "基本形") == Tag::A_INF);
  CHECK(m.map("助動詞", "") == Tag::OTHER);
  CHECK_THROWS_AS(TagMap::load_file("/nonexistent/x.tagmap"), IoError);
}

TEST_CASE("serialize") {
  CHECK(serialize_corpus(Corpus{}).empty());
  Corpus one{{Document{"", {{Token{"x", "x", Tag::N, "", Origin::Unknown}}}}}};
  CHECK(serialize_corpus(one) == "x\tx\tN\t-\n\n");
  CHECK(parse_tagged_string(serialize_corpus(one), TagMap::identity()) == one);
}

TEST_CASE("parse . serialize is the identity on random corpora") {
  std::mt19937 rng(20240611);
  for (int iter = 0; iter < 500; ++iter) {
    Corpus c = random_corpus(rng);
    auto text = serialize_corpus(c);
    Corpus back = parse_tagged_string(text, TagMap::identity(), true);
    REQUIRE(back == c);
  }
}
