#pragma once

#include <optional>
#include <vector>

#include "termpat/assoc_stats.hpp"
#include "termpat/corpus.hpp"
#include "termpat/matcher.hpp"
#include "termpat/term_bank.hpp"

namespace termpat {

struct PipelineOptions {
  std::optional<double> min_llr;
  unsigned threads = 1;
};

struct PipelineResult {
  std::vector<Candidate> candidates;
  PairCounts counts;
  TermBank bank;  // aggregated, linked and scored
  std::vector<TermEntry> ranked;
};

// Tagged corpus -> candidates -> linked term bank -> LLR scores -> ranked list.
PipelineResult run_pipeline(const Matcher& m, const Corpus& corpus,
                            const PipelineOptions& options = {});

}  // namespace termpat
