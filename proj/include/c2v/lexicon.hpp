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

#ifndef C2V_LEXICON_HPP
#define C2V_LEXICON_HPP

#include <map>
#include <string>
#include <vector>

// Pronunciation lexicon and phone-level distances. Words map to one or more
// phone sequences; the file format is the usual dictionary layout:
//
//   WORD      PH1 PH2 PH3
//   WORD(2)   PH1 PH4
//
// A "(n)" suffix marks an alternative pronunciation of the same word.
// Lines starting with ";;;" are comments. Words are kept verbatim (no case
// folding); callers decide their own casing conventions.

namespace c2v {

using Pronunciation = std::vector<std::string>;

struct Lexicon {
  // Sorted word -> pronunciation variants. std::map keeps iteration (and any
  // serialization) deterministic.
  std::map<std::string, std::vector<Pronunciation>> entries;

  bool contains(const std::string& word) const {
    return entries.find(word) != entries.end();
  }
  size_t size() const { return entries.size(); }
};

// One group of words sharing a pronunciation (homophones). File format: one
// group per line, members whitespace-separated, at least two per line.
struct HomophoneSet {
  std::vector<std::vector<std::string>> groups;
};

Lexicon load_lexicon(const std::string& path);
void save_lexicon(const Lexicon& lex, const std::string& path);

HomophoneSet load_homophones(const std::string& path);
void save_homophones(const HomophoneSet& sets, const std::string& path);

// Levenshtein distance over phone symbols (unit costs) normalized by the
// longer sequence. Two empty sequences have distance 0.
double phone_edit_distance(const Pronunciation& a, const Pronunciation& b);

// 1 - min normalized phone edit distance over all pronunciation pairs of the
// two words. Throws DataError when either word is missing from the lexicon.
double acoustic_similarity(const std::string& w1, const std::string& w2,
                           const Lexicon& lex);

}  // namespace c2v

#endif  // C2V_LEXICON_HPP
