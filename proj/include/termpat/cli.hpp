#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace termpat::cli {

enum class OutputFormat { Tsv, Structured };

struct RunConfig {
  std::string grammar = "builtin";  // or a grammar file path
  std::string tagmap;               // empty: canonical tag names are used as-is
  std::optional<double> min_llr;
  std::optional<std::size_t> max_len;
  OutputFormat format = OutputFormat::Tsv;
  bool strict_tags = false;
  unsigned threads = 1;
};

// Exit status: 0 success, 1 input or validation error, 2 I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitIo = 2;

// `path` may be "-" for `in`.
int cmd_extract(const RunConfig& config, const std::string& path, std::istream& in,
                std::ostream& out, std::ostream& err);
int cmd_coverage(const RunConfig& config, const std::string& gold_path, std::istream& in,
                 std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& config, const std::string& corpus_path,
                 const std::string& gold_path, std::istream& in, std::ostream& out,
                 std::ostream& err);
int cmd_grammar_dump(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace termpat::cli
