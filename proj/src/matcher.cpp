#include "termpat/matcher.hpp"

#include <algorithm>
#include <thread>

namespace termpat {

CompiledPattern::CompiledPattern(const Pattern& pattern) : pattern_(pattern) {
  Fragment f = build_sequence(pattern_.expr);
  start_ = f.in;
  accept_ = f.out;
}

int CompiledPattern::add_state() {
  states_.emplace_back();
  return static_cast<int>(states_.size() - 1);
}

CompiledPattern::Fragment CompiledPattern::build_sequence(const TagExpr& expr) {
  int in = add_state();
  int cur = in;
  for (const auto& atom : expr) {
    Fragment f = build_atom(atom);
    states_[cur].eps.push_back(f.in);
    cur = f.out;
  }
  return {in, cur};
}

CompiledPattern::Fragment CompiledPattern::build_once(const Atom& atom) {
  int in = add_state();
  int out = add_state();
  switch (atom.kind) {
    case Atom::Kind::Tags:
      states_[in].tags = atom.tags;
      states_[in].next = out;
      break;
    case Atom::Kind::Group:
      for (const auto& alt : atom.alternatives) {
        Fragment f = build_sequence(alt);
        states_[in].eps.push_back(f.in);
        states_[f.out].eps.push_back(out);
      }
      break;
    case Atom::Kind::Ref:
      states_[in].call = std::make_shared<const CompiledPattern>(*atom.target);
      states_[in].next = out;
      break;
  }
  return {in, out};
}

CompiledPattern::Fragment CompiledPattern::build_atom(const Atom& atom) {
  int in = add_state();
  int cur = in;
  for (int i = 0; i < atom.min_repeat; ++i) {
    Fragment f = build_once(atom);
    states_[cur].eps.push_back(f.in);
    cur = f.out;
  }
  if (atom.max_repeat == kUnbounded) {
    int loop = add_state();
    states_[cur].eps.push_back(loop);
    Fragment f = build_once(atom);
    states_[loop].eps.push_back(f.in);
    states_[f.out].eps.push_back(loop);
    cur = loop;
  } else {
    for (int i = atom.min_repeat; i < atom.max_repeat; ++i) {
      Fragment f = build_once(atom);
      int join = add_state();
      states_[cur].eps.push_back(f.in);
      states_[cur].eps.push_back(join);
      states_[f.out].eps.push_back(join);
      cur = join;
    }
  }
  return {in, cur};
}

void CompiledPattern::add_closure(std::vector<char>& set, int state) const {
  if (set[state]) return;
  set[state] = 1;
  for (int e : states_[state].eps) add_closure(set, e);
}

std::vector<bool> CompiledPattern::accepted_lengths(std::span<const Tag> tags,
                                                    std::size_t start,
                                                    std::size_t limit) const {
  const std::size_t avail = start <= tags.size() ? tags.size() - start : 0;
  const std::size_t span = std::min({limit, pattern_.max_tokens, avail});
  std::vector<bool> accepted(span + 1, false);

  std::vector<std::vector<char>> active(span + 1, std::vector<char>(states_.size(), 0));
  add_closure(active[0], start_);
  for (std::size_t pos = 0; pos <= span; ++pos) {
    for (std::size_t s = 0; s < states_.size(); ++s) {
      if (!active[pos][s]) continue;
      const State& st = states_[s];
      if (static_cast<int>(s) == accept_) accepted[pos] = true;
      if (pos == span) continue;
      if (st.call) {
        auto sub = st.call->accepted_lengths(tags, start + pos, span - pos);
        for (std::size_t k = 1; k < sub.size(); ++k) {
          if (sub[k]) add_closure(active[pos + k], st.next);
        }
      } else if (st.next >= 0 && st.tags.contains(tags[start + pos])) {
        add_closure(active[pos + 1], st.next);
      }
    }
  }

  if (pattern_.require) {
    std::size_t first = span + 1;
    for (std::size_t i = 0; i < span; ++i) {
      if (pattern_.require->contains(tags[start + i])) {
        first = i;
        break;
      }
    }
    for (std::size_t k = 0; k <= span && k <= first; ++k) accepted[k] = false;
  }
  if (pattern_.kind == PatternKind::Phrase) {
    std::size_t no_count = 0;
    for (std::size_t k = 0; k <= span; ++k) {
      if (k > 0 && tags[start + k - 1] == Tag::NO) ++no_count;
      if (no_count != 1) accepted[k] = false;
    }
  }
  return accepted;
}

std::optional<std::size_t> CompiledPattern::match_at(std::span<const Tag> tags,
                                                     std::size_t start) const {
  auto accepted = accepted_lengths(tags, start);
  for (std::size_t k = accepted.size(); k-- > 2;) {
    if (accepted[k]) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> CompiledPattern::match_at(std::span<const Token> tokens,
                                                     std::size_t start) const {
  auto tags = tags_of(tokens);
  return match_at(tags, start);
}

bool CompiledPattern::accepts_whole(std::span<const Tag> tags) const {
  if (tags.size() < 2 || tags.size() > pattern_.max_tokens) return false;
  auto accepted = accepted_lengths(tags, 0);
  return accepted.size() == tags.size() + 1 && accepted.back();
}

CompiledPattern compile_pattern(const Pattern& pattern) { return CompiledPattern(pattern); }

std::vector<Tag> tags_of(std::span<const Token> tokens) {
  std::vector<Tag> tags;
  tags.reserve(tokens.size());
  for (const auto& t : tokens) tags.push_back(t.tag);
  return tags;
}

// ---------------------------------------------------------------------------
// Matcher

Matcher::Matcher(Grammar grammar) : grammar_(std::move(grammar)) {
  compiled_.reserve(grammar_.patterns().size());
  for (const auto& p : grammar_.patterns()) compiled_.emplace_back(p);
}

std::vector<Candidate> Matcher::scan_sentence(const Sentence& sentence,
                                              std::string_view doc_id,
                                              std::size_t sentence_index) const {
  std::vector<Candidate> out;
  const auto tags = tags_of(sentence);
  std::size_t pos = 0;
  while (pos < tags.size()) {
    std::size_t best_len = 0;
    const CompiledPattern* best = nullptr;
    // compiled_ is in priority order, so strict > keeps the earliest on ties.
    for (const auto& cp : compiled_) {
      auto len = cp.match_at(tags, pos);
      if (len && *len > best_len) {
        best_len = *len;
        best = &cp;
      }
    }
    if (!best) {
      ++pos;
      continue;
    }
    Candidate c;
    c.doc_id = std::string(doc_id);
    c.sentence_index = sentence_index;
    c.start = pos;
    c.length = best_len;
    c.pattern_name = best->pattern().name;
    c.tokens.assign(sentence.begin() + static_cast<std::ptrdiff_t>(pos),
                    sentence.begin() + static_cast<std::ptrdiff_t>(pos + best_len));
    out.push_back(std::move(c));
    pos += best_len;
  }
  return out;
}

const Pattern* Matcher::accepting_pattern(std::span<const Tag> tags,
                                          std::optional<PatternKind> kind) const {
  for (const auto& cp : compiled_) {
    if (kind && cp.pattern().kind != *kind) continue;
    if (cp.accepts_whole(tags)) return &cp.pattern();
  }
  return nullptr;
}

std::optional<std::string> Matcher::accepts(std::span<const Token> tokens) const {
  auto tags = tags_of(tokens);
  if (const Pattern* p = accepting_pattern(tags)) return p->name;
  return std::nullopt;
}

std::vector<Candidate> Matcher::extract_corpus(const Corpus& corpus, unsigned threads) const {
  struct Job {
    const Document* doc;
    std::size_t index;
  };
  std::vector<Job> jobs;
  for (const auto& doc : corpus.documents) {
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) jobs.push_back({&doc, i});
  }

  std::vector<std::vector<Candidate>> results(jobs.size());
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      results[j] = scan_sentence(jobs[j].doc->sentences[jobs[j].index], jobs[j].doc->id,
                                 jobs[j].index);
    }
  };

  threads = std::max(1u, threads);
  if (threads == 1 || jobs.size() < 2) {
    run(0, jobs.size());
  } else {
    const std::size_t n = std::min<std::size_t>(threads, jobs.size());
    const std::size_t chunk = (jobs.size() + n - 1) / n;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(jobs.size(), begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<Candidate> out;
  for (auto& r : results) {
    std::move(r.begin(), r.end(), std::back_inserter(out));
  }
  return out;
}

std::optional<std::size_t> match_at(const CompiledPattern& pattern,
                                    std::span<const Token> tokens, std::size_t start) {
  return pattern.match_at(tokens, start);
}

std::vector<Candidate> scan_sentence(const Grammar& g, const Sentence& sentence,
                                     std::string_view doc_id, std::size_t sentence_index) {
  return Matcher(g).scan_sentence(sentence, doc_id, sentence_index);
}

std::optional<std::string> accepts(const Grammar& g, std::span<const Token> tokens) {
  return Matcher(g).accepts(tokens);
}

std::vector<Candidate> extract_corpus(const Grammar& g, const Corpus& corpus,
                                      unsigned threads) {
  return Matcher(g).extract_corpus(corpus, threads);
}

}  // namespace termpat
