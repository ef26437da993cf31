#include "termpat/term_bank.hpp"

#include <algorithm>
#include <tuple>

namespace termpat {

namespace {

bool token_less(const Token& a, const Token& b) {
  return std::tie(a.tag, a.surface, a.lemma, a.inflection, a.origin) <
         std::tie(b.tag, b.surface, b.lemma, b.inflection, b.origin);
}

bool tokens_less(std::span<const Token> a, std::span<const Token> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), token_less);
}

// Majority pattern; ties go to the higher-priority pattern.
void finalize(TermEntry& e, const Grammar& g) {
  const Pattern* best = nullptr;
  std::size_t best_count = 0;
  std::string best_name;
  for (const auto& [name, count] : e.pattern_counts) {
    const Pattern* p = g.find(name);
    bool better = count > best_count;
    if (count == best_count && best_count > 0) {
      std::size_t pa = p ? p->priority : SIZE_MAX;
      std::size_t pb = best ? best->priority : SIZE_MAX;
      better = pa < pb || (pa == pb && name < best_name);
    }
    if (better) {
      best = p;
      best_count = count;
      best_name = name;
    }
  }
  e.pattern_name = best_name;
  e.kind = best ? best->kind : PatternKind::Compound;
}

}  // namespace

std::vector<std::string> TermKey::lemmas() const {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = value.find(kKeySeparator, start);
    if (pos == std::string::npos) {
      out.push_back(value.substr(start));
      return out;
    }
    out.push_back(value.substr(start, pos - start));
    start = pos + kKeySeparator.size();
  }
}

TermKey make_key(std::span<const Token> tokens) {
  TermKey key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) key.value += kKeySeparator;
    key.value += tokens[i].lemma;
  }
  return key;
}

TermKey normalize_key(const Candidate& c) { return make_key(c.tokens); }

std::string surface_of(std::span<const Token> tokens) {
  std::string s;
  for (const auto& t : tokens) s += t.surface;
  return s;
}

std::string TermEntry::surface() const {
  std::string best;
  std::size_t best_count = 0;
  bool first = true;
  for (const auto& [s, count] : surfaces) {
    if (first || count > best_count) {
      best = s;
      best_count = count;
      first = false;
    }
  }
  return best;
}

const TermEntry* TermBank::find(const TermKey& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

TermBank aggregate(std::span<const Candidate> candidates, const Grammar& g) {
  TermBank bank;
  for (const auto& c : candidates) {
    TermKey key = normalize_key(c);
    auto [it, inserted] = bank.entries.try_emplace(key);
    TermEntry& e = it->second;
    if (inserted) {
      e.key = std::move(key);
      e.tokens = c.tokens;
    } else if (tokens_less(c.tokens, e.tokens)) {
      e.tokens = c.tokens;
    }
    ++e.frequency;
    ++e.surfaces[surface_of(c.tokens)];
    ++e.pattern_counts[c.pattern_name];
  }
  for (auto& [key, e] : bank.entries) finalize(e, g);
  bank.total_candidates = candidates.size();
  return bank;
}

TermBank merge_banks(const TermBank& a, const TermBank& b, const Grammar& g) {
  TermBank out;
  for (const TermBank* part : {&a, &b}) {
    for (const auto& [key, src] : part->entries) {
      if (src.synthetic) continue;
      auto [it, inserted] = out.entries.try_emplace(key);
      TermEntry& e = it->second;
      if (inserted) {
        e.key = key;
        e.tokens = src.tokens;
      } else if (tokens_less(src.tokens, e.tokens)) {
        e.tokens = src.tokens;
      }
      e.frequency += src.frequency;
      for (const auto& [s, n] : src.surfaces) e.surfaces[s] += n;
      for (const auto& [p, n] : src.pattern_counts) e.pattern_counts[p] += n;
    }
  }
  for (auto& [key, e] : out.entries) finalize(e, g);
  out.total_candidates = a.total_candidates + b.total_candidates;
  return out;
}

TermBank link_variants(const TermBank& bank, const Matcher& m) {
  const Grammar& g = m.grammar();
  const std::size_t min_basic = g.min_basic_length();
  const std::size_t max_basic = g.max_basic_length();

  TermBank out;
  out.total_candidates = bank.total_candidates;
  for (const auto& [key, e] : bank.entries) {
    if (e.synthetic) continue;
    TermEntry copy = e;
    copy.basic_key.reset();
    copy.variant_keys.clear();
    out.entries.emplace(key, std::move(copy));
  }

  std::vector<TermKey> keys;
  keys.reserve(out.entries.size());
  for (const auto& [key, e] : out.entries) keys.push_back(key);

  for (const auto& key : keys) {
    TermEntry& e = out.entries.at(key);
    if (e.kind == PatternKind::Basic) {
      e.basic_key = key;
      continue;
    }
    if (min_basic == 0 || e.tokens.size() <= min_basic) continue;

    std::span<const Token> region = e.tokens;
    if (e.kind == PatternKind::Phrase) {
      auto no = std::find_if(e.tokens.begin(), e.tokens.end(),
                             [](const Token& t) { return t.tag == Tag::NO; });
      if (no == e.tokens.end()) continue;
      region = std::span<const Token>(e.tokens).subspan(
          static_cast<std::size_t>(no - e.tokens.begin()) + 1);
    }

    std::optional<TermKey> target;
    for (std::size_t len = std::min(region.size(), max_basic); len >= min_basic && len > 0;
         --len) {
      auto window = region.subspan(region.size() - len);
      auto tags = tags_of(window);
      const Pattern* p = m.accepting_pattern(tags, PatternKind::Basic);
      if (!p) continue;
      TermKey wkey = make_key(window);
      auto it = out.entries.find(wkey);
      if (it == out.entries.end()) {
        TermEntry syn;
        syn.key = wkey;
        syn.pattern_name = p->name;
        syn.kind = PatternKind::Basic;
        syn.tokens.assign(window.begin(), window.end());
        syn.surfaces[surface_of(window)] = 0;
        syn.basic_key = wkey;
        syn.synthetic = true;
        out.entries.emplace(wkey, std::move(syn));
      } else if (it->second.kind != PatternKind::Basic) {
        continue;
      }
      target = wkey;
      break;
    }
    e.basic_key = target;
  }

  for (const auto& [key, e] : out.entries) {
    if (e.basic_key && *e.basic_key != key) {
      out.entries.at(*e.basic_key).variant_keys.insert(key);
    }
  }
  return out;
}

TermBank link_variants(const TermBank& bank, const Grammar& g) {
  return link_variants(bank, Matcher(g));
}

}  // namespace termpat
