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

#ifndef C2V_EVAL_HPP
#define C2V_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "c2v/lexicon.hpp"
#include "c2v/model.hpp"

// Evaluation battery: word analogies with multi-answer sets, rank-correlation
// word similarity, and generators that derive acoustic test sets from
// homophone groups and a pronunciation lexicon.

namespace c2v {

// "a : b :: c : ?" — correct when any member of `answers` is retrieved.
// File format, 4 whitespace-separated fields per line, alternative answers
// joined by '|', categories introduced by ": name" lines:
//
//   : capital-common
//   athens greece baghdad iraq
//   : acoustic
//   see sea red read|red2
struct AnalogyQuestion {
  std::string a, b, c;
  std::vector<std::string> answers;
  std::string category = "default";
};

// Word pair with a reference score. TSV: w1, w2, score.
struct SimilarityPair {
  std::string w1, w2;
  double score = 0.0;
};

std::vector<AnalogyQuestion> load_analogies(const std::string& path);
void save_analogies(const std::vector<AnalogyQuestion>& questions,
                    const std::string& path);
std::vector<SimilarityPair> load_similarity_pairs(const std::string& path);
void save_similarity_pairs(const std::vector<SimilarityPair>& pairs,
                           const std::string& path);

struct CategoryResult {
  int64_t used = 0;
  int64_t correct = 0;
  double accuracy = 0.0;
};

struct AnalogyReport {
  std::vector<std::pair<std::string, CategoryResult>> categories;
  CategoryResult overall;
  int64_t dropped = 0;  // OOV-pruned questions (vocab_filter mode)
};

// For each question: query = v(b) - v(a) + v(c); correct when any answer
// appears among the top_k nearest words. With exclude_question_words (the
// standard protocol) the candidates {a, b, c} are excluded from retrieval.
// vocab_filter=true drops questions whose a/b/c is out of vocabulary or whose
// answers all are, and reports them in `dropped`; vocab_filter=false keeps
// such questions and scores them as incorrect.
AnalogyReport eval_analogy(const EmbeddingModel& m,
                           const std::vector<AnalogyQuestion>& questions,
                           int top_k, bool vocab_filter = true,
                           bool exclude_question_words = true);

struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;
  size_t n = 0;
};

// Spearman rank correlation with average ranks for ties; two-sided p-value
// from the t approximation with n-2 degrees of freedom. Throws DataError for
// n < 3 or length mismatch, NumericError for constant input.
SpearmanResult spearman(const std::vector<double>& x,
                        const std::vector<double>& y);

struct SimilarityReport {
  SpearmanResult correlation;
  int64_t used = 0;
  int64_t dropped = 0;  // pairs with an OOV word
};

// Rank correlation between reference scores and embedding cosines over the
// in-vocabulary pairs. Fewer than 3 usable pairs -> DataError.
SimilarityReport eval_similarity(const EmbeddingModel& m,
                                 const std::vector<SimilarityPair>& pairs);

// Analogies among homophone groups: for every ordered pair of distinct
// groups and every ordered word pair (a1,a2) / (b1,b2) within them, emit
// (a1, a2, b1) with answer set = homophones of b1 minus b1. Deterministically
// subsampled to `limit` when limit > 0. Needs >= 2 groups.
std::vector<AnalogyQuestion> gen_acoustic_analogies(const HomophoneSet& groups,
                                                    size_t limit,
                                                    uint64_t seed);

// Homophone-substitution variants of base analogy questions (which must have
// single answers). Every question containing at least one homophone-bearing
// word among {a, b, c, answer} expands into all substitution permutations
// except the identity; the answer set becomes the original answer plus its
// homophones. Questions without homophone-bearing words are pruned; if none
// remain, DataError. Deterministically subsampled to `sample_n` when > 0.
std::vector<AnalogyQuestion> gen_ss_acoustic_analogies(
    const std::vector<AnalogyQuestion>& base, const HomophoneSet& groups,
    size_t sample_n, uint64_t seed);

struct RatingGenResult {
  std::vector<SimilarityPair> pairs;
  int64_t dropped = 0;  // rated pairs skipped for missing pronunciations
};

// Acoustic similarity ratings: all within-group homophone pairs at score 1.0,
// plus the given rated pairs rescored by acoustic_similarity. Rated pairs
// missing from the lexicon are dropped and counted; each unordered pair is
// emitted once (the homophone score wins a collision).
RatingGenResult gen_acoustic_similarity_ratings(
    const std::vector<SimilarityPair>& rated, const HomophoneSet& groups,
    const Lexicon& lex);

}  // namespace c2v

#endif  // C2V_EVAL_HPP
