#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "termpat/assoc_stats.hpp"
#include "termpat/error.hpp"
#include "termpat/eval.hpp"
#include "termpat/grammar.hpp"
#include "termpat/matcher.hpp"
#include "termpat/pipeline.hpp"

namespace py = pybind11;
using namespace termpat;

namespace {

std::vector<Tag> to_tags(const std::vector<std::string>& names) {
  std::vector<Tag> tags;
  tags.reserve(names.size());
  for (const auto& n : names) {
    auto t = parse_tag_name(n);
    if (!t) throw py::value_error("unknown tag name '" + n + "'");
    tags.push_back(*t);
  }
  return tags;
}

Sentence to_sentence(const std::vector<std::string>& names) {
  Sentence s;
  for (Tag t : to_tags(names)) s.push_back(Token{"", "", t, "", Origin::Unknown});
  return s;
}

py::object opt(const std::optional<double>& v) {
  return v ? py::object(py::float_(*v)) : py::object(py::none());
}

py::dict term_dict(const TermEntry& e, std::size_t rank) {
  py::dict d;
  d["rank"] = rank;
  d["key"] = e.key.value;
  d["surface"] = e.surface();
  d["pattern"] = e.pattern_name;
  d["kind"] = std::string(kind_name(e.kind));
  d["frequency"] = e.frequency;
  d["llr"] = opt(e.score);
  d["basic_key"] = e.basic_key ? py::object(py::str(e.basic_key->value)) : py::none();
  py::list variants;
  for (const auto& v : e.variant_keys) variants.append(v.value);
  d["variant_keys"] = variants;
  d["synthetic"] = e.synthetic;
  return d;
}

Matcher make_matcher(const std::optional<Grammar>& g) {
  return Matcher(g ? *g : builtin_japanese_grammar());
}

}  // namespace

PYBIND11_MODULE(_termpat, m) {
  m.doc() = "Pattern-based multiword term extraction";

  static py::exception<Error> base_error(m, "TermpatError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base_error.ptr());
  py::register_exception<DomainError>(m, "DomainError", base_error.ptr());
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<TagMap>(m, "TagMap")
      .def_static("identity", &TagMap::identity)
      .def_static("load", &TagMap::load_file, py::arg("path"))
      .def("map", [](const TagMap& t, const std::string& raw, const std::string& infl) {
             return std::string(tag_name(t.map(raw, infl)));
           },
           py::arg("raw"), py::arg("inflection") = "");

  py::class_<Token>(m, "Token")
      .def_readonly("surface", &Token::surface)
      .def_readonly("lemma", &Token::lemma)
      .def_property_readonly("tag", [](const Token& t) { return std::string(tag_name(t.tag)); })
      .def_readonly("inflection", &Token::inflection)
      .def("__repr__", [](const Token& t) {
        return "Token(" + t.surface + ", " + t.lemma + ", " + std::string(tag_name(t.tag)) + ")";
      });

  py::class_<Corpus>(m, "Corpus")
      .def_static(
          "parse",
          [](const std::string& text, const std::optional<TagMap>& map, bool strict) {
            return parse_tagged_string(text, map ? *map : TagMap::identity(), strict);
          },
          py::arg("text"), py::arg("tagmap") = std::nullopt, py::arg("strict") = false)
      .def_property_readonly("token_count", &Corpus::token_count)
      .def_property_readonly("sentence_count", &Corpus::sentence_count)
      .def_property_readonly("documents",
                             [](const Corpus& c) {
                               py::list out;
                               for (const auto& d : c.documents) {
                                 out.append(py::make_tuple(d.id, d.sentences));
                               }
                               return out;
                             })
      .def("serialize", [](const Corpus& c) { return serialize_corpus(c); })
      .def("__eq__", [](const Corpus& a, const Corpus& b) { return a == b; });

  py::class_<Grammar>(m, "Grammar")
      .def_static("builtin", &builtin_japanese_grammar)
      .def_static("loads", [](const std::string& text) { return load_grammar_string(text); })
      .def_static("load", &load_grammar_file, py::arg("path"))
      .def("dump", &dump_grammar)
      .def("with_max_tokens", &Grammar::with_max_tokens, py::arg("cap"))
      .def_property_readonly("pattern_names",
                             [](const Grammar& g) {
                               std::vector<std::string> names;
                               for (const auto& p : g.patterns()) names.push_back(p.name);
                               return names;
                             })
      .def("__eq__", [](const Grammar& a, const Grammar& b) { return a == b; });

  py::class_<Matcher>(m, "Matcher")
      .def(py::init(&make_matcher), py::arg("grammar") = std::nullopt)
      .def("accepts",
           [](const Matcher& mt, const std::vector<std::string>& tags) {
             return mt.accepts(to_sentence(tags));
           },
           py::arg("tags"), "Highest-priority pattern accepting the whole tag sequence.")
      .def("scan",
           [](const Matcher& mt, const std::vector<std::string>& tags) {
             std::vector<std::tuple<std::size_t, std::size_t, std::string>> out;
             for (const auto& c : mt.scan_sentence(to_sentence(tags), "", 0)) {
               out.emplace_back(c.start, c.length, c.pattern_name);
             }
             return out;
           },
           py::arg("tags"), "(start, length, pattern) for each candidate in one sentence.");

  m.def(
      "extract",
      [](const Corpus& corpus, const std::optional<Grammar>& grammar,
         std::optional<double> min_llr, unsigned threads) {
        PipelineResult r;
        {
          py::gil_scoped_release release;
          r = run_pipeline(make_matcher(grammar), corpus, {min_llr, threads});
        }
        py::list out;
        std::size_t rank = 0;
        for (const auto& e : r.ranked) out.append(term_dict(e, ++rank));
        return out;
      },
      py::arg("corpus"), py::arg("grammar") = std::nullopt, py::arg("min_llr") = std::nullopt,
      py::arg("threads") = 1, "Ranked term list as dicts, same fields as the structured output.");

  m.def(
      "coverage",
      [](const Corpus& gold, const std::optional<Grammar>& grammar) {
        const auto terms = gold_terms(gold);
        const CoverageReport r = coverage_eval(make_matcher(grammar), terms);
        py::dict d;
        d["total_terms"] = r.total_terms;
        d["one_word_terms"] = r.one_word_terms;
        d["one_word_rate"] = r.one_word_rate;
        d["phrasal_terms"] = r.phrasal_terms;
        d["phrasal_rate"] = r.phrasal_rate;
        d["accepted_terms"] = r.accepted_terms;
        d["coverage_rate"] = r.coverage_rate;
        d["patterns"] = r.per_pattern;
        return d;
      },
      py::arg("gold"), py::arg("grammar") = std::nullopt);

  m.def(
      "evaluate",
      [](const Corpus& corpus, const Corpus& gold, const std::optional<Grammar>& grammar,
         std::optional<double> min_llr) {
        auto result = run_pipeline(make_matcher(grammar), corpus, {min_llr, 1});
        std::vector<TermKey> keys;
        for (const auto& e : result.ranked) {
          if (!e.synthetic) keys.push_back(e.key);
        }
        const ExtractionReport r = extraction_eval(keys, gold_terms(gold), corpus);
        py::dict d;
        d["extracted_count"] = r.extracted_count;
        d["gold_total"] = r.gold_total;
        d["gold_in_text"] = r.gold_in_text;
        d["gold_one_word"] = r.gold_one_word;
        d["upper_bound"] = r.upper_bound;
        d["correct_count"] = r.correct_count;
        d["precision"] = opt(r.precision);
        d["hit_rate_all"] = r.hit_rate_all;
        d["hit_rate_upper"] = opt(r.hit_rate_upper);
        return d;
      },
      py::arg("corpus"), py::arg("gold"), py::arg("grammar") = std::nullopt,
      py::arg("min_llr") = std::nullopt);

  m.def(
      "log_likelihood",
      [](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
        return log_likelihood(ContingencyTable{a, b, c, d});
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));
  m.def("format_percent", &format_percent, py::arg("num"), py::arg("den"));
  m.def("tag_names", [] {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < kTagCount; ++i) out.emplace_back(tag_name(static_cast<Tag>(i)));
    return out;
  });
}
