#include "termpat/pipeline.hpp"

namespace termpat {

PipelineResult run_pipeline(const Matcher& m, const Corpus& corpus,
                            const PipelineOptions& options) {
  PipelineResult r;
  r.candidates = m.extract_corpus(corpus, options.threads);
  r.counts = count_pairs(r.candidates);
  TermBank linked = link_variants(aggregate(r.candidates, m.grammar()), m);
  r.bank = score_bank(linked, r.counts);
  r.ranked = rank_and_filter(r.bank, options.min_llr);
  return r;
}

}  // namespace termpat
