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

#ifndef C2V_CONFNET_HPP
#define C2V_CONFNET_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "c2v/lexicon.hpp"

// Word confusion networks ("sausages"): a linear sequence of bins, each bin a
// small set of word alternatives with posterior probabilities.
//
// Text format, one bin per line, networks separated by a blank line:
//
//   #id utt-000001
//   i:1.000000
//   to:0.550000 two:0.300000 too:0.150000
//
// The "#id" header line is optional. Posteriors in a bin are normalized to
// sum to 1 and sorted descending (ties broken lexicographically by word).
// "<eps>" is a reserved token for a skippable/empty arc.

namespace c2v {

inline constexpr const char* kEpsToken = "<eps>";

struct BinEntry {
  std::string word;
  double posterior = 0.0;
};

struct ConfusionBin {
  std::vector<BinEntry> entries;

  size_t size() const { return entries.size(); }
};

struct ConfusionNetwork {
  std::string utterance_id;  // empty means "no id"; not serialized when empty
  std::vector<ConfusionBin> bins;

  size_t num_bins() const { return bins.size(); }
  size_t num_arcs() const {
    size_t n = 0;
    for (const auto& b : bins) n += b.entries.size();
    return n;
  }
};

// Scale posteriors to sum to 1 and sort entries by descending posterior,
// ties by word. Throws NumericError when total mass is zero (or negative),
// DataError when the bin is empty.
void normalize_bin(ConfusionBin& bin);

// Normalize every bin of every network in place.
void normalize(std::vector<ConfusionNetwork>& nets);

// Highest-posterior word of each bin, in order. Includes "<eps>" heads; the
// training-stream view in the sampler drops those separately.
std::vector<std::string> top1_path(const ConfusionNetwork& net);

// Parse / serialize the text format. parse_confnets normalizes bins and
// reports format violations as ParseError with a 1-based line number.
std::vector<ConfusionNetwork> parse_confnets(std::istream& in,
                                             const std::string& name);
std::vector<ConfusionNetwork> load_confnets(const std::string& path);
void write_confnets(const std::vector<ConfusionNetwork>& nets,
                    std::ostream& out);
void save_confnets(const std::vector<ConfusionNetwork>& nets,
                   const std::string& path);

// Noise process for synthesizing confusion networks from clean sentences,
// emulating recognizer output.
//   confusion_rate          probability a token's bin receives alternatives
//   max_alternatives        cap on added alternatives per bin
//   substitution_rate       probability (given alternatives) that the closest
//                           alternative displaces the true word at rank 1
//   posterior_concentration symmetric Dirichlet parameter for bin posteriors
struct NoiseModel {
  double confusion_rate = 0.5;
  int max_alternatives = 3;
  double substitution_rate = 0.1;
  double posterior_concentration = 0.4;
  uint64_t seed = 1;
};

// Turn clean sentences (token vectors) into confusion networks. Alternatives
// are the acoustically closest lexicon words by phone_edit_distance (ties
// broken lexicographically); tokens missing from the lexicon become singleton
// bins. Deterministic for a given NoiseModel. Throws DataError on an empty
// corpus or on an empty lexicon when confusion_rate > 0.
std::vector<ConfusionNetwork> synthesize_confnets(
    const std::vector<std::vector<std::string>>& sentences, const Lexicon& lex,
    const NoiseModel& noise);

struct CorpusStats {
  size_t num_networks = 0;
  size_t num_bins = 0;
  size_t num_arcs = 0;
  double avg_arcs_per_bin = 0.0;  // num_arcs / num_bins
};

CorpusStats corpus_stats(const std::vector<ConfusionNetwork>& nets);

// Plain-text corpora: one sentence per line, whitespace-separated tokens.
std::vector<std::vector<std::string>> load_sentences(const std::string& path);
void save_sentences(const std::vector<std::vector<std::string>>& sentences,
                    const std::string& path);

// Degenerate networks for clean text: one singleton bin (posterior 1) per
// token.
std::vector<ConfusionNetwork> sentences_to_confnets(
    const std::vector<std::vector<std::string>>& sentences);

}  // namespace c2v

#endif  // C2V_CONFNET_HPP
