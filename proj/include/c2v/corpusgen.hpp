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

#ifndef C2V_CORPUSGEN_HPP
#define C2V_CORPUSGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "c2v/eval.hpp"
#include "c2v/lexicon.hpp"

// Synthetic-language generator for end-to-end experiments. The grammar builds
// a small world with:
//   - country/capital pairs (semantic relation, category "capital-common")
//   - singular/plural nouns (category "gram-plural")
//   - present/past verbs (category "gram-past-tense")
//   - injected homophone groups: spelling variants sharing one pronunciation,
//     placed at a controlled token frequency
//   - filler nouns up to the vocabulary target
// Content words are random consonant-vowel shapes assigned to roles from a
// shuffled pool, so phonetic proximity carries no semantic signal. Every
// token is pronounced letter-by-letter; homophone variants reuse the base
// word's pronunciation. Free noun slots come in three frame families, and
// each deck word — homophone variant or filler — is placed only in its home
// family, with the members of one group assigned pairwise different homes.
// Like real homophones, spelling variants therefore never share clean-text
// contexts: whatever binds them must come from the confusion networks.

namespace c2v {

struct GrammarConfig {
  int sentences = 10000;
  int vocab_target = 2000;      // approximate type count (>= 300)
  int homophone_groups = 20;
  double homophone_freq = 0.002;  // expected token share per group
  uint64_t seed = 1;
};

struct SyntheticWorld {
  std::vector<std::vector<std::string>> sentences;
  Lexicon lexicon;
  HomophoneSet homophones;
  std::vector<AnalogyQuestion> analogies;   // the grammar's own relations
  std::vector<SimilarityPair> rated_pairs;  // wordsim-style ratings
};

// Deterministic for a given config. Throws DataError on unusable parameters.
SyntheticWorld generate_world(const GrammarConfig& cfg);

}  // namespace c2v

#endif  // C2V_CORPUSGEN_HPP
