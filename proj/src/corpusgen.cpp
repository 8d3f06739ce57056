/*
 * Copyright 2026 The c2v Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "c2v/corpusgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "c2v/errors.hpp"
#include "c2v/rng.hpp"

namespace c2v {

namespace {

constexpr int kSemanticPairs = 18;
constexpr int kPluralNouns = 12;
constexpr int kVerbs = 12;

const char* const kFunctionWords[] = {
    "the",  "a",     "of",   "in",    "is",        "was",   "and",
    "are",  "capital", "king", "lives", "one",     "two",   "many",
    "some", "we",    "they", "near",  "with",      "often", "today",
    "yesterday", "then", "there",  "here",  "sleep", "sleeps", "eat",
    "eats"};

const char kConsonants[] = "bdfgklmnprstvz";
const char kVowels[] = "aeiou";

// Inflection markers are three letters long on purpose: a short suffix
// ("-s") leaves stem and inflected form a single edit apart, and the noise
// model would then file them as each other's closest confusions, handing a
// purely acoustic model the grammar relations for free. Real number/tense
// morphology is not something an ASR confuses away.
constexpr const char* kPluralSuffix = "los";
constexpr const char* kPastSuffix = "nid";

// Each animal and verb lemma keeps a few characteristic filler companions
// that preferentially fill the free noun slot of its own sentences. Without
// them every animal would occur in identical frames, stem vectors would be
// interchangeable, and relation queries would reduce to guessing among the
// inflected forms; shared-topic company is what individuates nouns in
// natural text.
constexpr int kAffinityFillers = 4;
constexpr double kAffinityProb = 0.4;

std::string gen_shape(Rng& rng) {
  int syllables = 2 + static_cast<int>(uniform_index(rng, 2));  // 2..3
  std::string s;
  for (int i = 0; i < syllables; ++i) {
    s += kConsonants[uniform_index(rng, sizeof(kConsonants) - 1)];
    s += kVowels[uniform_index(rng, sizeof(kVowels) - 1)];
  }
  return s;
}

Pronunciation letters_of(const std::string& w) {
  Pronunciation p;
  p.reserve(w.size());
  for (char c : w) p.emplace_back(1, c);
  return p;
}

// The placeholder marking a content-noun slot to be filled from the deck.
const std::string kNoun = "\x01";

// Noun slots come in three frame families: animal templates, verb templates
// and generic templates. Every deck word has one home family, and the members
// of one homophone group get pairwise different homes, so spelling variants
// never share clean-text contexts. Their closeness has to come from the
// confusion networks — as it does for real homophones, which is also why a
// context-only model should not score acoustic similarity above chance.
constexpr int kFamilies = 3;
constexpr int kFamilyAnimal = 0;
constexpr int kFamilyVerb = 1;
constexpr int kFamilyGeneric = 2;

}  // namespace

SyntheticWorld generate_world(const GrammarConfig& cfg) {
  if (cfg.sentences < 10) throw DataError("need at least 10 sentences");
  if (cfg.vocab_target < 300) throw DataError("vocab_target must be >= 300");
  if (cfg.homophone_groups < 2)
    throw DataError("need at least 2 homophone groups");
  if (!(cfg.homophone_freq > 0.0) || cfg.homophone_freq > 0.05)
    throw DataError("homophone_freq must be in (0, 0.05]");

  Rng rng = make_rng(cfg.seed);
  SyntheticWorld world;

  const int n_groups = cfg.homophone_groups;
  const int n_triples = (n_groups * 7) / 10;
  // A few groups are built on analogy-task lemmas so that homophone
  // substitution over the grammar's own questions has material to work with;
  // the rest get dedicated base words.
  const int n_repurposed = std::min(4, n_groups);
  const int n_dedicated = n_groups - n_repurposed;
  const int hom_tokens =
      3 * n_triples + 2 * (n_groups - n_triples) - n_repurposed;
  const int n_function = static_cast<int>(std::size(kFunctionWords));
  int n_filler = cfg.vocab_target -
                 (2 * kSemanticPairs + 2 * kPluralNouns + 2 * kVerbs +
                  n_function + hom_tokens);
  if (n_filler < 50)
    throw DataError("vocab_target too small for the configured world");

  // --- word shapes, reserved together with every derived form ---
  std::set<std::string> used;
  for (const char* w : kFunctionWords) used.insert(w);
  const size_t n_shapes = size_t(2 * kSemanticPairs) + kPluralNouns + kVerbs +
                          n_dedicated + n_filler;
  std::vector<std::string> pool;
  pool.reserve(n_shapes);
  while (pool.size() < n_shapes) {
    std::string s = gen_shape(rng);
    if (used.count(s) || used.count(s + kPluralSuffix) ||
        used.count(s + kPastSuffix) || used.count(s + "x") ||
        used.count(s + "q"))
      continue;
    used.insert(s);
    used.insert(s + kPluralSuffix);
    used.insert(s + kPastSuffix);
    used.insert(s + "x");
    used.insert(s + "q");
    pool.push_back(std::move(s));
  }
  size_t next = 0;
  auto take = [&](int n) {
    std::vector<std::string> out(pool.begin() + next, pool.begin() + next + n);
    next += n;
    return out;
  };
  auto countries = take(kSemanticPairs);
  auto capitals = take(kSemanticPairs);
  auto animals = take(kPluralNouns);
  auto verbs = take(kVerbs);
  auto dedicated = take(n_dedicated);
  auto fillers = take(n_filler);

  std::vector<std::string> animal_pl, verb_past;
  for (const auto& a : animals) animal_pl.push_back(a + kPluralSuffix);
  for (const auto& v : verbs) verb_past.push_back(v + kPastSuffix);

  const std::string repurposable[4] = {animals[0], animals[1], verbs[0],
                                       verbs[1]};
  std::vector<std::string> hom_bases;
  for (int g = 0; g < n_repurposed; ++g) hom_bases.push_back(repurposable[g]);
  for (const auto& w : dedicated) hom_bases.push_back(w);

  for (int g = 0; g < n_groups; ++g) {
    std::vector<std::string> group{hom_bases[g], hom_bases[g] + "x"};
    if (g < n_triples) group.push_back(hom_bases[g] + "q");
    world.homophones.groups.push_back(std::move(group));
  }

  // --- lexicon: letter phones; homophone variants share the base's ---
  auto add_pron = [&](const std::string& w, const std::string& spelled) {
    world.lexicon.entries[w].push_back(letters_of(spelled));
  };
  for (const char* w : kFunctionWords) add_pron(w, w);
  for (const auto& v : {countries, capitals, animals, animal_pl, verbs,
                        verb_past, fillers})
    for (const auto& w : v) add_pron(w, w);
  for (int g = 0; g < n_groups; ++g)
    for (const auto& w : world.homophones.groups[g])
      if (!world.lexicon.entries.count(w)) add_pron(w, hom_bases[g]);

  // --- sentence drafts; content-noun slots are filled afterwards ---
  auto& sents = world.sentences;
  sents.reserve(cfg.sentences);
  struct NounSlot {
    size_t sentence, token;
    int family;
    int lemma;  // animal 0..11, verb 12..23, -1 when the frame has no lemma
  };
  std::vector<NounSlot> noun_slots;
  size_t total_tokens = 0;
  auto push = [&](std::vector<std::string> sent, int family, int lemma) {
    for (size_t t = 0; t < sent.size(); ++t)
      if (sent[t] == kNoun)
        noun_slots.push_back({sents.size(), t, family, lemma});
    total_tokens += sent.size();
    sents.push_back(std::move(sent));
  };

  for (int s = 0; s < cfg.sentences; ++s) {
    double r = next_double(rng);
    if (r < 0.24) {
      size_t i = uniform_index(rng, kSemanticPairs);
      switch (uniform_index(rng, 3)) {
        case 0:
          push({"the", "capital", "of", countries[i], "is", capitals[i]},
               kFamilyGeneric, -1);
          break;
        case 1:
          push({capitals[i], "is", "the", "capital", "of", countries[i]},
               kFamilyGeneric, -1);
          break;
        default:
          push({"the", "king", "of", countries[i], "lives", "in",
                capitals[i]},
               kFamilyGeneric, -1);
      }
    } else if (r < 0.39) {
      int i = static_cast<int>(uniform_index(rng, kPluralNouns));
      switch (uniform_index(rng, 4)) {
        case 0:
          push({"one", animals[i], "sleeps", "near", "the", kNoun},
               kFamilyAnimal, i);
          break;
        case 1:
          push({"many", animal_pl[i], "sleep", "near", "the", kNoun},
               kFamilyAnimal, i);
          break;
        case 2:
          push({"the", animals[i], "eats", "some", kNoun}, kFamilyAnimal, i);
          break;
        default:
          push({"two", animal_pl[i], "eat", "some", kNoun}, kFamilyAnimal, i);
      }
    } else if (r < 0.54) {
      int i = static_cast<int>(uniform_index(rng, kVerbs));
      switch (uniform_index(rng, 4)) {
        case 0:
          push({"today", "we", verbs[i], "with", "the", kNoun}, kFamilyVerb,
               kPluralNouns + i);
          break;
        case 1:
          push({"yesterday", "we", verb_past[i], "with", "the", kNoun},
               kFamilyVerb, kPluralNouns + i);
          break;
        case 2:
          push({"they", "often", verbs[i], "near", "the", kNoun},
               kFamilyVerb, kPluralNouns + i);
          break;
        default:
          push({"they", verb_past[i], "near", "the", kNoun, "then"},
               kFamilyVerb, kPluralNouns + i);
      }
    } else {
      switch (uniform_index(rng, 3)) {
        case 0:
          push({"the", kNoun, "is", "near", "the", kNoun}, kFamilyGeneric,
               -1);
          break;
        case 1:
          push({"a", kNoun, "and", "a", kNoun, "are", "here"}, kFamilyGeneric,
               -1);
          break;
        default:
          push({"some", kNoun, "was", "with", "the", kNoun, "there"},
               kFamilyGeneric, -1);
      }
    }
  }

  // --- noun decks: exact homophone quotas, filler for the rest. Quotas are
  // discounted by the occurrences the drafted templates already placed
  // (repurposed lemma bases appear in their own sentences), so the final
  // per-group token share still lands on homophone_freq. Member m of group g
  // lives in family (g + m) % kFamilies; filler types are split round-robin.
  std::map<std::string, long long> structured;
  for (int g = 0; g < n_repurposed; ++g) structured[hom_bases[g]] = 0;
  for (const auto& sent : sents)
    for (const auto& tok : sent) {
      auto it = structured.find(tok);
      if (it != structured.end()) ++it->second;
    }
  std::array<size_t, kFamilies> capacity{};
  for (const auto& slot : noun_slots) ++capacity[slot.family];
  std::array<std::vector<std::string>, kFamilies> deck;
  for (int g = 0; g < n_groups; ++g) {
    const auto& group = world.homophones.groups[g];
    auto quota = static_cast<long long>(
        std::llround(static_cast<double>(total_tokens) * cfg.homophone_freq));
    long long have = 0;
    for (const auto& w : group) {
      auto it = structured.find(w);
      if (it != structured.end()) have += it->second;
    }
    quota = std::max<long long>(0, quota - have);
    for (size_t m = 0; m < group.size(); ++m) {
      long long share = quota / static_cast<long long>(group.size()) +
                        (static_cast<long long>(m) <
                                 quota % static_cast<long long>(group.size())
                             ? 1
                             : 0);
      auto& home = deck[(g + static_cast<int>(m)) % kFamilies];
      for (long long k = 0; k < share; ++k) home.push_back(group[m]);
    }
  }
  // Filler types are split across the families in proportion to each
  // family's remaining token demand, so filler token frequencies stay
  // roughly uniform; skewed pools would leave one family's types too rare
  // to survive ordinary min-count thresholds.
  std::array<size_t, kFamilies> need{};
  size_t total_need = 0;
  for (int f = 0; f < kFamilies; ++f) {
    if (deck[f].size() > capacity[f])
      throw DataError(
          "homophone_freq too high: quota exceeds available noun slots");
    need[f] = capacity[f] - deck[f].size();
    total_need += need[f];
  }
  std::array<size_t, kFamilies> pool_types{};
  if (total_need > 0) {
    size_t assigned = 0;
    for (int f = 0; f < kFamilies; ++f) {
      pool_types[f] = static_cast<size_t>(
          std::llround(static_cast<double>(fillers.size()) *
                       static_cast<double>(need[f]) /
                       static_cast<double>(total_need)));
      if (need[f] > 0 && pool_types[f] == 0) pool_types[f] = 1;
      assigned += pool_types[f];
    }
    const int big = static_cast<int>(
        std::max_element(need.begin(), need.end()) - need.begin());
    while (assigned > fillers.size() && pool_types[big] > 1) {
      --pool_types[big];
      --assigned;
    }
    while (assigned < fillers.size()) {
      ++pool_types[big];
      ++assigned;
    }
  }
  std::array<std::vector<const std::string*>, kFamilies> filler_pool;
  {
    size_t at = 0;
    for (int f = 0; f < kFamilies; ++f)
      for (size_t k = 0; k < pool_types[f] && at < fillers.size(); ++k)
        filler_pool[f].push_back(&fillers[at++]);
  }
  for (int f = 0; f < kFamilies; ++f) {
    auto& dk = deck[f];
    const auto& pool = filler_pool[f];
    while (dk.size() < capacity[f])
      dk.push_back(*pool[uniform_index(rng, pool.size())]);
    for (size_t i = dk.size(); i > 1; --i)
      std::swap(dk[i - 1], dk[uniform_index(rng, i)]);
  }
  std::set<std::string> group_words;
  for (const auto& g : world.homophones.groups)
    group_words.insert(g.begin(), g.end());
  std::array<size_t, kFamilies> cursor{};
  for (const auto& slot : noun_slots) {
    std::string w = deck[slot.family][cursor[slot.family]++];
    // Homophone tokens always keep their slot — their counts are the quota.
    // A filler may yield its slot to a companion of the frame's lemma.
    const auto& pool = filler_pool[slot.family];
    if (slot.lemma >= 0 && !pool.empty() && !group_words.count(w) &&
        next_double(rng) < kAffinityProb) {
      const size_t n = std::min<size_t>(kAffinityFillers, pool.size());
      const size_t k = static_cast<size_t>(slot.lemma < kPluralNouns
                                               ? slot.lemma
                                               : slot.lemma - kPluralNouns);
      w = *pool[(k * kAffinityFillers + uniform_index(rng, n)) % pool.size()];
    }
    sents[slot.sentence][slot.token] = w;
  }

  // --- the grammar's own analogy relations ---
  auto add_relation = [&](const std::vector<std::string>& lhs,
                          const std::vector<std::string>& rhs,
                          const std::string& category) {
    for (size_t i = 0; i < lhs.size(); ++i)
      for (size_t j = 0; j < lhs.size(); ++j) {
        if (i == j) continue;
        AnalogyQuestion q;
        q.a = lhs[i];
        q.b = rhs[i];
        q.c = lhs[j];
        q.answers = {rhs[j]};
        q.category = category;
        world.analogies.push_back(std::move(q));
      }
  };
  add_relation(capitals, countries, "capital-common");
  add_relation(animals, animal_pl, "gram-plural");
  add_relation(verbs, verb_past, "gram-past-tense");

  // --- wordsim-style rated pairs over lemma words only: no inflection
  //     pairs, no homophone pairs, so ratings carry no acoustic shortcut ---
  std::vector<std::pair<std::string, int>> rating_pool;  // word, role id
  for (const auto& w : countries) rating_pool.emplace_back(w, 0);
  for (const auto& w : capitals) rating_pool.emplace_back(w, 1);
  for (const auto& w : animals) rating_pool.emplace_back(w, 2);
  for (const auto& w : verbs) rating_pool.emplace_back(w, 3);
  for (const auto& w : dedicated) rating_pool.emplace_back(w, 4);
  for (size_t i = 0; i < std::min<size_t>(200, fillers.size()); ++i)
    rating_pool.emplace_back(fillers[i], 5);

  std::set<std::pair<std::string, std::string>> seen;
  const size_t want = 300;
  size_t attempts = 0;
  while (world.rated_pairs.size() < want && attempts < want * 50) {
    ++attempts;
    size_t i = uniform_index(rng, rating_pool.size());
    size_t j = uniform_index(rng, rating_pool.size());
    if (i == j) continue;
    const auto& [w1, r1] = rating_pool[i];
    const auto& [w2, r2] = rating_pool[j];
    auto key = w1 < w2 ? std::make_pair(w1, w2) : std::make_pair(w2, w1);
    if (!seen.insert(key).second) continue;
    double score = (r1 == r2 ? 7.0 : 1.0) + 2.0 * next_double(rng);
    world.rated_pairs.push_back({w1, w2, score});
  }

  return world;
}

}  // namespace c2v
