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

#include "c2v/vocab.hpp"

#include <algorithm>
#include <cmath>

#include "c2v/errors.hpp"
#include "c2v/text_io.hpp"

namespace c2v {

Vocabulary::Vocabulary(std::vector<std::string> words,
                       std::vector<int64_t> counts, double subsample_t)
    : words_(std::move(words)),
      counts_(std::move(counts)),
      subsample_t_(subsample_t) {
  if (words_.empty()) throw DataError("empty vocabulary");
  if (words_.size() != counts_.size())
    throw DataError("vocabulary words/counts size mismatch");
  ids_.reserve(words_.size() * 2);
  for (size_t i = 0; i < words_.size(); ++i) {
    if (counts_[i] <= 0)
      throw DataError("non-positive count for word '" + words_[i] + "'");
    if (!ids_.emplace(words_[i], static_cast<int32_t>(i)).second)
      throw DataError("duplicate word in vocabulary: '" + words_[i] + "'");
    total_tokens_ += counts_[i];
  }

  keep_prob_.resize(words_.size());
  for (size_t i = 0; i < words_.size(); ++i) {
    if (subsample_t_ > 0.0) {
      double f = static_cast<double>(counts_[i]) /
                 static_cast<double>(total_tokens_);
      keep_prob_[i] = std::min(1.0, std::sqrt(subsample_t_ / f));
    } else {
      keep_prob_[i] = 1.0;
    }
  }

  neg_prob_.resize(words_.size());
  neg_cum_.resize(words_.size());
  double z = 0.0;
  for (size_t i = 0; i < words_.size(); ++i) {
    neg_prob_[i] = std::pow(static_cast<double>(counts_[i]), 0.75);
    z += neg_prob_[i];
  }
  double cum = 0.0;
  for (size_t i = 0; i < words_.size(); ++i) {
    neg_prob_[i] /= z;
    cum += neg_prob_[i];
    neg_cum_[i] = cum;
  }
  neg_cum_.back() = 1.0;  // guard the binary search against rounding
}

Vocabulary build_vocab(const std::vector<ConfusionNetwork>& nets,
                       int64_t min_count, double subsample_t) {
  if (nets.empty()) throw DataError("empty corpus: no networks");
  std::unordered_map<std::string, int64_t> raw;
  for (const auto& net : nets)
    for (const auto& bin : net.bins)
      for (const auto& e : bin.entries)
        if (e.word != kEpsToken) ++raw[e.word];
  if (raw.empty()) throw DataError("empty corpus: no countable arcs");

  std::vector<std::pair<std::string, int64_t>> kept;
  kept.reserve(raw.size());
  for (auto& [w, c] : raw)
    if (c >= min_count) kept.emplace_back(w, c);
  if (kept.empty())
    throw DataError("no words survive min_count=" + std::to_string(min_count));

  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::vector<std::string> words;
  std::vector<int64_t> counts;
  words.reserve(kept.size());
  counts.reserve(kept.size());
  for (auto& [w, c] : kept) {
    words.push_back(std::move(w));
    counts.push_back(c);
  }
  return Vocabulary(std::move(words), std::move(counts), subsample_t);
}

int32_t negative_sample(const Vocabulary& v, Rng& rng) {
  double u = next_double(rng);
  auto it = std::upper_bound(v.neg_cum_.begin(), v.neg_cum_.end(), u);
  if (it == v.neg_cum_.end()) --it;
  return static_cast<int32_t>(it - v.neg_cum_.begin());
}

bool subsample_decision(const Vocabulary& v, int32_t id, Rng& rng) {
  if (id < 0 || id >= v.size())
    throw DataError("subsample_decision: unknown word id " +
                    std::to_string(id));
  double p = v.keep_prob(id);
  if (p >= 1.0) return true;
  return next_double(rng) < p;
}

void save_vocab_dump(const Vocabulary& v, const std::string& path) {
  auto out = open_output(path);
  for (int32_t i = 0; i < v.size(); ++i)
    out << v.word(i) << '\t' << v.count(i) << '\n';
}

Vocabulary load_vocab_dump(const std::string& path, double subsample_t) {
  auto in = open_input(path);
  std::vector<std::string> words;
  std::vector<int64_t> counts;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    auto fields = split_ws(sv);
    if (fields.size() != 2)
      throw ParseError(path, lineno, "expected 'word<TAB>count'");
    auto c = parse_int(fields[1]);
    if (!c || *c <= 0)
      throw ParseError(path, lineno,
                       "bad count '" + std::string(fields[1]) + "'");
    words.emplace_back(fields[0]);
    counts.push_back(*c);
  }
  if (words.empty()) throw DataError("empty vocabulary dump: " + path);
  return Vocabulary(std::move(words), std::move(counts), subsample_t);
}

}  // namespace c2v
