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

#include "c2v/confnet.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "c2v/errors.hpp"
#include "c2v/rng.hpp"
#include "c2v/text_io.hpp"

namespace c2v {

void normalize_bin(ConfusionBin& bin) {
  if (bin.entries.empty()) throw DataError("empty confusion bin");
  double sum = 0.0;
  for (const auto& e : bin.entries) {
    if (e.posterior < 0.0)
      throw NumericError("negative posterior for word '" + e.word + "'");
    sum += e.posterior;
  }
  if (!(sum > 0.0))
    throw NumericError("confusion bin has zero posterior mass");
  for (auto& e : bin.entries) e.posterior /= sum;
  std::stable_sort(bin.entries.begin(), bin.entries.end(),
                   [](const BinEntry& a, const BinEntry& b) {
                     if (a.posterior != b.posterior)
                       return a.posterior > b.posterior;
                     return a.word < b.word;
                   });
}

void normalize(std::vector<ConfusionNetwork>& nets) {
  for (auto& net : nets)
    for (auto& bin : net.bins) normalize_bin(bin);
}

std::vector<std::string> top1_path(const ConfusionNetwork& net) {
  std::vector<std::string> path;
  path.reserve(net.bins.size());
  for (const auto& bin : net.bins) {
    if (bin.entries.empty()) throw DataError("empty confusion bin");
    path.push_back(bin.entries.front().word);
  }
  return path;
}

std::vector<ConfusionNetwork> parse_confnets(std::istream& in,
                                             const std::string& name) {
  std::vector<ConfusionNetwork> nets;
  ConfusionNetwork cur;
  bool in_block = false;
  std::string line;
  size_t lineno = 0;

  auto flush = [&]() {
    if (in_block) {
      if (cur.bins.empty())
        throw DataError(name + ": network block with no bins");
      nets.push_back(std::move(cur));
      cur = ConfusionNetwork{};
      in_block = false;
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty()) {
      flush();
      continue;
    }
    if (sv.substr(0, 3) == "#id") {
      std::string_view rest = trim(sv.substr(3));
      if (rest.empty())
        throw ParseError(name, lineno, "#id line without an identifier");
      if (in_block && !cur.bins.empty())
        throw ParseError(name, lineno, "#id must precede the first bin");
      cur.utterance_id = std::string(rest);
      in_block = true;
      continue;
    }
    if (sv[0] == '#') continue;  // other comments are ignored
    ConfusionBin bin;
    for (auto tok : split_ws(sv)) {
      size_t colon = tok.rfind(':');
      if (colon == std::string_view::npos || colon == 0)
        throw ParseError(name, lineno,
                         "expected word:posterior, got '" + std::string(tok) +
                             "'");
      std::string_view word = tok.substr(0, colon);
      std::string_view post = tok.substr(colon + 1);
      auto p = parse_double(post);
      if (!p)
        throw ParseError(name, lineno,
                         "bad posterior '" + std::string(post) + "'");
      if (*p < 0.0)
        throw ParseError(name, lineno,
                         "negative posterior '" + std::string(post) + "'");
      bin.entries.push_back({std::string(word), *p});
    }
    if (bin.entries.empty())
      throw ParseError(name, lineno, "bin line with no entries");
    try {
      normalize_bin(bin);
    } catch (const NumericError& e) {
      throw ParseError(name, lineno, e.what());
    }
    cur.bins.push_back(std::move(bin));
    in_block = true;
  }
  flush();
  return nets;
}

std::vector<ConfusionNetwork> load_confnets(const std::string& path) {
  auto in = open_input(path);
  return parse_confnets(in, path);
}

void write_confnets(const std::vector<ConfusionNetwork>& nets,
                    std::ostream& out) {
  for (const auto& net : nets) {
    if (!net.utterance_id.empty()) out << "#id " << net.utterance_id << '\n';
    for (const auto& bin : net.bins) {
      for (size_t i = 0; i < bin.entries.size(); ++i) {
        if (i) out << ' ';
        out << bin.entries[i].word << ':'
            << format_fixed(bin.entries[i].posterior, 6);
      }
      out << '\n';
    }
    out << '\n';
  }
}

void save_confnets(const std::vector<ConfusionNetwork>& nets,
                   const std::string& path) {
  auto out = open_output(path);
  write_confnets(nets, out);
}

namespace {

// Per word: the acoustically closest other lexicon words, precomputed once.
// Ordering: (distance, word) ascending, so ties are stable and homophones
// (distance 0) come first.
class AlternativeFinder {
 public:
  AlternativeFinder(const Lexicon& lex, int max_alternatives)
      : lex_(lex), max_alternatives_(max_alternatives) {
    words_.reserve(lex.entries.size());
    for (const auto& [w, _] : lex.entries) words_.push_back(w);
  }

  const std::vector<std::string>& closest(const std::string& word) {
    auto it = cache_.find(word);
    if (it != cache_.end()) return it->second;
    std::vector<std::pair<double, const std::string*>> scored;
    scored.reserve(words_.size());
    const auto& prons = lex_.entries.at(word);
    for (const auto& other : words_) {
      if (other == word) continue;
      double best = 1.0;
      for (const auto& p1 : prons)
        for (const auto& p2 : lex_.entries.at(other))
          best = std::min(best, phone_edit_distance(p1, p2));
      scored.emplace_back(best, &other);
    }
    size_t k =
        std::min(scored.size(), static_cast<size_t>(max_alternatives_));
    std::partial_sort(scored.begin(), scored.begin() + k, scored.end(),
                      [](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first < b.first;
                        return *a.second < *b.second;
                      });
    std::vector<std::string> out;
    out.reserve(k);
    for (size_t i = 0; i < k; ++i) out.push_back(*scored[i].second);
    return cache_.emplace(word, std::move(out)).first->second;
  }

 private:
  const Lexicon& lex_;
  int max_alternatives_;
  std::vector<std::string> words_;
  std::map<std::string, std::vector<std::string>> cache_;
};

}  // namespace

std::vector<ConfusionNetwork> synthesize_confnets(
    const std::vector<std::vector<std::string>>& sentences, const Lexicon& lex,
    const NoiseModel& noise) {
  if (sentences.empty()) throw DataError("no sentences to synthesize from");
  if (noise.confusion_rate < 0.0 || noise.confusion_rate > 1.0)
    throw DataError("confusion_rate must be in [0, 1]");
  if (noise.substitution_rate < 0.0 || noise.substitution_rate > 1.0)
    throw DataError("substitution_rate must be in [0, 1]");
  if (noise.max_alternatives < 0)
    throw DataError("max_alternatives must be >= 0");
  if (!(noise.posterior_concentration > 0.0))
    throw DataError("posterior_concentration must be > 0");
  if (noise.confusion_rate > 0.0 && lex.entries.empty())
    throw DataError("confusion_rate > 0 requires a non-empty lexicon");

  AlternativeFinder finder(lex, noise.max_alternatives);
  Rng rng = make_rng(noise.seed);
  std::vector<ConfusionNetwork> nets;
  nets.reserve(sentences.size());

  char idbuf[32];
  size_t idx = 0;
  for (const auto& sent : sentences) {
    if (sent.empty()) throw DataError("empty sentence in synthesis input");
    ConfusionNetwork net;
    std::snprintf(idbuf, sizeof(idbuf), "synth-%06zu", idx++);
    net.utterance_id = idbuf;
    net.bins.reserve(sent.size());
    for (const auto& word : sent) {
      ConfusionBin bin;
      bool confusable = lex.contains(word) && noise.max_alternatives > 0;
      bool confuse =
          confusable && next_double(rng) < noise.confusion_rate;
      if (!confuse) {
        bin.entries.push_back({word, 1.0});
        net.bins.push_back(std::move(bin));
        continue;
      }
      const auto& alts = finder.closest(word);
      if (alts.empty()) {
        bin.entries.push_back({word, 1.0});
        net.bins.push_back(std::move(bin));
        continue;
      }
      auto post = next_dirichlet(rng, noise.posterior_concentration,
                                 alts.size() + 1);
      std::sort(post.begin(), post.end(), std::greater<double>());
      // True word takes the biggest share, alternatives follow in closeness
      // order; a substitution event swaps rank 1 with the closest alternative,
      // emulating a recognizer picking the wrong word.
      bin.entries.push_back({word, post[0]});
      for (size_t i = 0; i < alts.size(); ++i)
        bin.entries.push_back({alts[i], post[i + 1]});
      if (next_double(rng) < noise.substitution_rate)
        std::swap(bin.entries[0].posterior, bin.entries[1].posterior);
      normalize_bin(bin);
      net.bins.push_back(std::move(bin));
    }
    nets.push_back(std::move(net));
  }
  return nets;
}

std::vector<std::vector<std::string>> load_sentences(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    std::vector<std::string> sent;
    sent.reserve(toks.size());
    for (auto t : toks) sent.emplace_back(t);
    out.push_back(std::move(sent));
  }
  if (out.empty()) throw DataError("no sentences in " + path);
  return out;
}

void save_sentences(const std::vector<std::vector<std::string>>& sentences,
                    const std::string& path) {
  auto out = open_output(path);
  for (const auto& s : sentences) {
    for (size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  }
}

std::vector<ConfusionNetwork> sentences_to_confnets(
    const std::vector<std::vector<std::string>>& sentences) {
  std::vector<ConfusionNetwork> nets;
  nets.reserve(sentences.size());
  for (const auto& s : sentences) {
    ConfusionNetwork net;
    net.bins.reserve(s.size());
    for (const auto& w : s) {
      ConfusionBin bin;
      bin.entries.push_back({w, 1.0});
      net.bins.push_back(std::move(bin));
    }
    nets.push_back(std::move(net));
  }
  return nets;
}

CorpusStats corpus_stats(const std::vector<ConfusionNetwork>& nets) {
  CorpusStats st;
  st.num_networks = nets.size();
  for (const auto& net : nets) {
    st.num_bins += net.bins.size();
    st.num_arcs += net.num_arcs();
  }
  st.avg_arcs_per_bin =
      st.num_bins ? static_cast<double>(st.num_arcs) / st.num_bins : 0.0;
  return st;
}

}  // namespace c2v
