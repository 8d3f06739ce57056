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

#ifndef C2V_SAMPLER_HPP
#define C2V_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "c2v/confnet.hpp"
#include "c2v/rng.hpp"
#include "c2v/vocab.hpp"

// Training-pair generation from confusion networks. Four schemes:
//
//   top     skip-gram over the top-1 token sequence only
//   intra   ordered pairs of distinct words inside the same bin (a word is
//           never predicted from itself)
//   inter   every word of a bin paired with every word of neighboring bins
//           within the skip window (both directions, truncated at the ends)
//   hybrid  the intra stream followed by the inter stream
//
// Stream view rules: bins headed by "<eps>" are dropped, "<eps>" arcs and
// out-of-vocabulary arcs are skipped, and bins left empty vanish (the window
// then spans the gap). With subsampling on, each surviving arc additionally
// passes an independent keep test from the vocabulary.

namespace c2v {

struct TrainingPair {
  int32_t center;
  int32_t context;
};

enum class Scheme { kTop, kIntra, kInter, kHybrid };

const char* scheme_name(Scheme s);
// Throws DataError for anything other than top/intra/inter/hybrid.
Scheme scheme_from_name(const std::string& name);

struct SamplerConfig {
  Scheme scheme = Scheme::kInter;
  int skip_window = 4;
  bool subsample = false;        // apply per-arc keep decisions
  bool posterior_weighted = false;  // pair weight = product of posteriors
  bool dynamic_window = false;   // per-center window drawn from [1, skip_window]
};

// Analytic stream length for one network: the number of pairs the generator
// emits when every non-eps arc is in-vocabulary, subsampling is off, and
// windows are static. Counts over the eps-filtered structure only.
int64_t count_pairs(const ConfusionNetwork& net, const SamplerConfig& cfg);

// Append the pair stream of `net` to `pairs` in canonical order (centers
// outermost, contexts left to right). When cfg.posterior_weighted is set and
// `weights` is non-null, one weight per pair is appended as well.
void generate_pairs(const ConfusionNetwork& net, const Vocabulary& vocab,
                    const SamplerConfig& cfg, Rng& rng,
                    std::vector<TrainingPair>& pairs,
                    std::vector<float>* weights = nullptr);

// Scheme-specific conveniences; cfg.scheme is ignored in favor of the named
// scheme.
std::vector<TrainingPair> gen_top_pairs(const ConfusionNetwork& net,
                                        const Vocabulary& vocab,
                                        SamplerConfig cfg, Rng& rng);
std::vector<TrainingPair> gen_intra_pairs(const ConfusionNetwork& net,
                                          const Vocabulary& vocab,
                                          SamplerConfig cfg, Rng& rng);
std::vector<TrainingPair> gen_inter_pairs(const ConfusionNetwork& net,
                                          const Vocabulary& vocab,
                                          SamplerConfig cfg, Rng& rng);
std::vector<TrainingPair> gen_hybrid_pairs(const ConfusionNetwork& net,
                                           const Vocabulary& vocab,
                                           SamplerConfig cfg, Rng& rng);

}  // namespace c2v

#endif  // C2V_SAMPLER_HPP
