#include "termpat/assoc_stats.hpp"

#include <algorithm>
#include <cmath>

#include "termpat/error.hpp"

namespace termpat {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

std::uint64_t PairCounts::count(const std::string& w1, const std::string& w2) const {
  auto it = pairs.find({w1, w2});
  return it == pairs.end() ? 0 : it->second;
}

PairCounts count_pairs(std::span<const Candidate> candidates) {
  PairCounts pc;
  for (const auto& c : candidates) {
    const Token* prev = nullptr;
    for (const auto& tok : c.tokens) {
      if (tok.tag == Tag::NO) continue;
      if (prev) {
        ++pc.pairs[{prev->lemma, tok.lemma}];
        ++pc.left[prev->lemma];
        ++pc.right[tok.lemma];
        ++pc.total;
      }
      prev = &tok;
    }
  }
  return pc;
}

void merge_counts(PairCounts& into, const PairCounts& from) {
  for (const auto& [k, n] : from.pairs) into.pairs[k] += n;
  for (const auto& [k, n] : from.left) into.left[k] += n;
  for (const auto& [k, n] : from.right) into.right[k] += n;
  into.total += from.total;
}

ContingencyTable contingency(const std::string& w1, const std::string& w2,
                             const PairCounts& pc) {
  auto marginal = [](const std::map<std::string, std::uint64_t>& m, const std::string& w) {
    auto it = m.find(w);
    return it == m.end() ? std::uint64_t{0} : it->second;
  };
  ContingencyTable t;
  t.a = pc.count(w1, w2);
  t.b = marginal(pc.left, w1) - t.a;
  t.c = marginal(pc.right, w2) - t.a;
  t.d = pc.total - t.a - t.b - t.c;
  return t;
}

// Entropy form: 2 [sum k ln k - sum row ln row - sum col ln col + N ln N].
double log_likelihood(const ContingencyTable& t) {
  const double a = static_cast<double>(t.a);
  const double b = static_cast<double>(t.b);
  const double c = static_cast<double>(t.c);
  const double d = static_cast<double>(t.d);
  const double n = a + b + c + d;
  if (n <= 0.0) throw DomainError("log-likelihood of an empty contingency table");
  const double cells = xlogx(a) + xlogx(b) + xlogx(c) + xlogx(d);
  const double rows = xlogx(a + b) + xlogx(c + d);
  const double cols = xlogx(a + c) + xlogx(b + d);
  return std::max(0.0, 2.0 * (cells - rows - cols + xlogx(n)));
}

std::optional<std::pair<std::string, std::string>> scoring_pair(const TermEntry& basic) {
  const std::string* head = nullptr;
  const std::string* modifier = nullptr;
  for (auto it = basic.tokens.rbegin(); it != basic.tokens.rend(); ++it) {
    if (it->tag == Tag::NO) continue;
    if (!head) {
      head = &it->lemma;
    } else {
      modifier = &it->lemma;
      break;
    }
  }
  if (!modifier) return std::nullopt;
  return std::make_pair(*modifier, *head);
}

TermBank score_bank(const TermBank& bank, const PairCounts& pc) {
  TermBank out = bank;
  for (auto& [key, e] : out.entries) {
    e.score.reset();
    if (!e.basic_key || pc.total == 0) continue;
    const TermEntry* basic = bank.find(*e.basic_key);
    if (!basic) continue;
    auto pair = scoring_pair(*basic);
    if (!pair) continue;
    e.score = log_likelihood(contingency(pair->first, pair->second, pc));
  }
  return out;
}

std::vector<TermEntry> rank_and_filter(const TermBank& bank, std::optional<double> min_llr) {
  std::vector<TermEntry> out;
  for (const auto& [key, e] : bank.entries) {
    if (min_llr && (!e.score || *e.score < *min_llr)) continue;
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const TermEntry& x, const TermEntry& y) {
    if (x.score.has_value() != y.score.has_value()) return x.score.has_value();
    if (x.score && *x.score != *y.score) return *x.score > *y.score;
    if (x.frequency != y.frequency) return x.frequency > y.frequency;
    return x.key < y.key;
  });
  return out;
}

}  // namespace termpat
