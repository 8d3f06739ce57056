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

#ifndef C2V_VOCAB_HPP
#define C2V_VOCAB_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "c2v/confnet.hpp"
#include "c2v/rng.hpp"

// Vocabulary over confusion-network corpora. Counts tally every arc of every
// bin (all alternatives, not just the top path); the reserved "<eps>" token
// is never counted. Words below min_count are discarded. Ids are assigned by
// descending count, ties broken lexicographically, so building is
// deterministic and a dump/load round trip is the identity.

namespace c2v {

class Vocabulary {
 public:
  // subsample_t is the subsampling threshold t in keep_prob =
  // min(1, sqrt(t / f(w))); t <= 0 disables subsampling (keep everything).
  Vocabulary(std::vector<std::string> words, std::vector<int64_t> counts,
             double subsample_t);

  int32_t size() const { return static_cast<int32_t>(words_.size()); }
  const std::string& word(int32_t id) const { return words_[id]; }
  int64_t count(int32_t id) const { return counts_[id]; }
  int64_t total_tokens() const { return total_tokens_; }
  double subsample_threshold() const { return subsample_t_; }

  // -1 when unknown.
  int32_t id_of(const std::string& word) const {
    auto it = ids_.find(word);
    return it == ids_.end() ? -1 : it->second;
  }
  bool contains(const std::string& word) const { return id_of(word) >= 0; }

  double keep_prob(int32_t id) const { return keep_prob_[id]; }
  // Unigram^0.75 negative-sampling probability of a word.
  double negative_prob(int32_t id) const { return neg_prob_[id]; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int32_t> ids_;
  std::vector<int64_t> counts_;
  int64_t total_tokens_ = 0;
  double subsample_t_ = 0.0;
  std::vector<double> keep_prob_;
  std::vector<double> neg_prob_;
  std::vector<double> neg_cum_;  // cumulative distribution for sampling

  friend int32_t negative_sample(const Vocabulary& v, Rng& rng);
};

// Count arcs across all networks, apply min_count, build the tables.
// Throws DataError when the corpus is empty or nothing survives min_count.
Vocabulary build_vocab(const std::vector<ConfusionNetwork>& nets,
                       int64_t min_count, double subsample_t);

// Draw a word id from the unigram^0.75 distribution.
int32_t negative_sample(const Vocabulary& v, Rng& rng);

// One Bernoulli keep/drop decision for an occurrence of word `id`.
bool subsample_decision(const Vocabulary& v, int32_t id, Rng& rng);

// TSV dump "word<TAB>count", descending count (ties lexicographic): the id
// order. load_vocab_dump(save_vocab_dump(v)) reproduces v exactly.
void save_vocab_dump(const Vocabulary& v, const std::string& path);
Vocabulary load_vocab_dump(const std::string& path, double subsample_t);

}  // namespace c2v

#endif  // C2V_VOCAB_HPP
