#include "termpat/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "termpat/error.hpp"
#include "termpat/eval.hpp"
#include "termpat/grammar.hpp"
#include "termpat/pipeline.hpp"

namespace termpat::cli {

namespace {

using nlohmann::ordered_json;

Grammar load_configured_grammar(const RunConfig& config) {
  Grammar g = config.grammar == "builtin" ? builtin_japanese_grammar()
                                          : load_grammar_file(config.grammar);
  if (config.max_len) {
    if (*config.max_len < 2) throw DomainError("--max-len must be at least 2");
    g = g.with_max_tokens(*config.max_len);
  }
  return g;
}

TagMap load_configured_tagmap(const RunConfig& config) {
  return config.tagmap.empty() ? TagMap::identity() : TagMap::load_file(config.tagmap);
}

Corpus read_corpus(const std::string& path, std::istream& in, const TagMap& map, bool strict) {
  if (path == "-") return parse_tagged_stream(in, map, strict);
  std::ifstream file(path);
  if (!file) throw IoError("cannot open '" + path + "'");
  Corpus c = parse_tagged_stream(file, map, strict);
  if (file.bad()) throw IoError("error reading '" + path + "'");
  return c;
}

std::string fraction(std::size_t num, std::size_t den) {
  return std::to_string(num) + "/" + std::to_string(den) + " (" + format_percent(num, den) + ")";
}

std::string format_score(const std::optional<double>& score) {
  if (!score) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *score);
  return buf;
}

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

void print_terms(const std::vector<TermEntry>& ranked, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Structured) {
    ordered_json terms = ordered_json::array();
    std::size_t rank = 0;
    for (const auto& e : ranked) {
      ordered_json variants = ordered_json::array();
      for (const auto& v : e.variant_keys) variants.push_back(v.value);
      terms.push_back({{"rank", ++rank},
                       {"key", e.key.value},
                       {"surface", e.surface()},
                       {"pattern", e.pattern_name},
                       {"kind", kind_name(e.kind)},
                       {"frequency", e.frequency},
                       {"llr", optional_json(e.score)},
                       {"basic_key", e.basic_key ? ordered_json(e.basic_key->value)
                                                 : ordered_json(nullptr)},
                       {"variant_keys", variants},
                       {"synthetic", e.synthetic}});
    }
    out << ordered_json{{"terms", terms}}.dump(2) << '\n';
    return;
  }
  out << "rank\tkey\tsurface\tpattern\tfrequency\tllr\tbasic_key\n";
  std::size_t rank = 0;
  for (const auto& e : ranked) {
    out << ++rank << '\t' << e.key.value << '\t' << e.surface() << '\t' << e.pattern_name
        << '\t' << e.frequency << '\t' << format_score(e.score) << '\t'
        << (e.basic_key ? e.basic_key->value : std::string()) << '\n';
  }
}

}  // namespace

int cmd_extract(const RunConfig& config, const std::string& path, std::istream& in,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Matcher matcher(load_configured_grammar(config));
    const Corpus corpus = read_corpus(path, in, load_configured_tagmap(config), config.strict_tags);
    auto result = run_pipeline(matcher, corpus, {config.min_llr, config.threads});
    print_terms(result.ranked, config.format, out);
    return kExitOk;
  });
}

int cmd_coverage(const RunConfig& config, const std::string& gold_path, std::istream& in,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Matcher matcher(load_configured_grammar(config));
    const Corpus gold_file =
        read_corpus(gold_path, in, load_configured_tagmap(config), config.strict_tags);
    const auto gold = gold_terms(gold_file);
    const CoverageReport r = coverage_eval(matcher, gold);

    if (config.format == OutputFormat::Structured) {
      ordered_json patterns = ordered_json::object();
      for (const auto& p : matcher.grammar().patterns()) {
        auto it = r.per_pattern.find(p.name);
        patterns[p.name] = it == r.per_pattern.end() ? 0 : it->second;
      }
      out << ordered_json{{"total_terms", r.total_terms},
                          {"one_word_terms", r.one_word_terms},
                          {"one_word_rate", r.one_word_rate},
                          {"phrasal_terms", r.phrasal_terms},
                          {"phrasal_rate", r.phrasal_rate},
                          {"accepted_terms", r.accepted_terms},
                          {"coverage_rate", r.coverage_rate},
                          {"patterns", patterns}}
                 .dump(2)
          << '\n';
      return kExitOk;
    }
    out << "total_terms\t" << r.total_terms << '\n'
        << "one_word_terms\t" << fraction(r.one_word_terms, r.total_terms) << '\n'
        << "phrasal_terms\t" << fraction(r.phrasal_terms, r.total_terms) << '\n'
        << "accepted_terms\t" << r.accepted_terms << '\n'
        << "coverage\t" << fraction(r.accepted_terms, r.total_terms) << '\n';
    for (const auto& p : matcher.grammar().patterns()) {
      auto it = r.per_pattern.find(p.name);
      if (it != r.per_pattern.end()) out << "accepted_by\t" << p.name << '\t' << it->second << '\n';
    }
    return kExitOk;
  });
}

int cmd_evaluate(const RunConfig& config, const std::string& corpus_path,
                 const std::string& gold_path, std::istream& in, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    if (corpus_path == "-" && gold_path == "-") {
      throw DomainError("only one of corpus and gold may be read from standard input");
    }
    const Matcher matcher(load_configured_grammar(config));
    const TagMap map = load_configured_tagmap(config);
    const Corpus corpus = read_corpus(corpus_path, in, map, config.strict_tags);
    const auto gold = gold_terms(read_corpus(gold_path, in, map, config.strict_tags));

    auto result = run_pipeline(matcher, corpus, {config.min_llr, config.threads});
    std::vector<TermKey> extracted;
    for (const auto& e : result.ranked) {
      if (!e.synthetic) extracted.push_back(e.key);
    }
    const ExtractionReport r = extraction_eval(extracted, gold, corpus);

    if (config.format == OutputFormat::Structured) {
      out << ordered_json{{"extracted_count", r.extracted_count},
                          {"gold_total", r.gold_total},
                          {"gold_in_text", r.gold_in_text},
                          {"gold_one_word", r.gold_one_word},
                          {"upper_bound", r.upper_bound},
                          {"correct_count", r.correct_count},
                          {"precision", optional_json(r.precision)},
                          {"hit_rate_all", r.hit_rate_all},
                          {"hit_rate_upper", optional_json(r.hit_rate_upper)}}
                 .dump(2)
          << '\n';
      return kExitOk;
    }
    out << "extracted\t" << r.extracted_count << '\n'
        << "gold_total\t" << r.gold_total << '\n'
        << "contained_in_text\t" << fraction(r.gold_in_text, r.gold_total) << '\n'
        << "one_word_keys\t" << fraction(r.gold_one_word, r.gold_in_text) << '\n'
        << "upper_bound\t" << fraction(r.upper_bound, r.gold_total) << '\n'
        << "precision\t" << fraction(r.correct_count, r.extracted_count) << '\n'
        << "hit_rate_all\t" << fraction(r.correct_count, r.gold_total) << '\n'
        << "hit_rate_upper\t" << fraction(r.correct_count, r.upper_bound) << '\n';
    return kExitOk;
  });
}

int cmd_grammar_dump(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Grammar g = load_configured_grammar(config);
    if (config.format == OutputFormat::Structured) {
      ordered_json patterns = ordered_json::array();
      for (const auto& p : g.patterns()) {
        patterns.push_back({{"name", p.name},
                            {"kind", kind_name(p.kind)},
                            {"priority", p.priority},
                            {"max_tokens", p.max_tokens},
                            {"require", p.require ? ordered_json(p.require_name)
                                                  : ordered_json(nullptr)},
                            {"expr", render_expr(p.expr)}});
      }
      out << ordered_json{{"patterns", patterns}}.dump(2) << '\n';
    } else {
      out << dump_grammar(g);
    }
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Pattern-based multiword term extraction from POS-tagged text", "termpat"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "tsv";
  double min_llr = 0.0;
  std::size_t max_len = 0;
  auto* min_llr_opt = app.add_option("--min-llr", min_llr, "Drop terms scoring below this LLR");
  auto* max_len_opt = app.add_option("--max-len", max_len, "Lower every pattern's length cap");
  app.add_option("--grammar", config.grammar, "Grammar file, or 'builtin'");
  app.add_option("--tagmap", config.tagmap, "Raw POS to canonical tag map");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"tsv", "structured"}));
  app.add_flag("--strict-tags", config.strict_tags, "Fail on unmapped raw tags");
  app.add_option("--threads", config.threads, "Scanner threads")->check(CLI::Range(1u, 256u));

  std::string corpus_path, gold_path;
  auto* extract = app.add_subcommand("extract", "Extract ranked term candidates");
  extract->add_option("corpus", corpus_path, "Tagged corpus ('-' for stdin)")->required();
  auto* coverage = app.add_subcommand("coverage", "Grammar coverage of a gold term list");
  coverage->add_option("gold", gold_path, "Tagged gold terms ('-' for stdin)")->required();
  auto* evaluate = app.add_subcommand("evaluate", "Extraction precision against gold terms");
  evaluate->add_option("corpus", corpus_path, "Tagged corpus")->required();
  evaluate->add_option("gold", gold_path, "Tagged gold terms")->required();
  auto* dump = app.add_subcommand("grammar-dump", "Print the grammar in file syntax");
  for (auto* sub : {extract, coverage, evaluate, dump}) sub->fallthrough();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*min_llr_opt) config.min_llr = min_llr;
  if (*max_len_opt) config.max_len = max_len;
  config.format = format == "structured" ? OutputFormat::Structured : OutputFormat::Tsv;

  if (*extract) return cmd_extract(config, corpus_path, in, out, err);
  if (*coverage) return cmd_coverage(config, gold_path, in, out, err);
  if (*evaluate) return cmd_evaluate(config, corpus_path, gold_path, in, out, err);
  return cmd_grammar_dump(config, out, err);
}

}  // namespace termpat::cli
