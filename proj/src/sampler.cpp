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

#include "c2v/sampler.hpp"

#include <algorithm>

#include "c2v/errors.hpp"

namespace c2v {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kTop:
      return "top";
    case Scheme::kIntra:
      return "intra";
    case Scheme::kInter:
      return "inter";
    case Scheme::kHybrid:
      return "hybrid";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "top") return Scheme::kTop;
  if (name == "intra") return Scheme::kIntra;
  if (name == "inter") return Scheme::kInter;
  if (name == "hybrid") return Scheme::kHybrid;
  throw DataError("unknown scheme '" + name +
                  "' (expected top|intra|inter|hybrid)");
}

namespace {

struct Arc {
  int32_t id;
  float post;
};

void check_cfg(const SamplerConfig& cfg) {
  if (cfg.skip_window < 1) throw DataError("skip_window must be >= 1");
}

// Intra/inter view: surviving arcs of each surviving bin, original order.
std::vector<std::vector<Arc>> make_bin_view(const ConfusionNetwork& net,
                                            const Vocabulary& vocab,
                                            const SamplerConfig& cfg,
                                            Rng& rng) {
  std::vector<std::vector<Arc>> view;
  view.reserve(net.bins.size());
  for (const auto& bin : net.bins) {
    if (bin.entries.empty()) continue;
    if (bin.entries.front().word == kEpsToken) continue;
    std::vector<Arc> arcs;
    for (const auto& e : bin.entries) {
      if (e.word == kEpsToken) continue;
      int32_t id = vocab.id_of(e.word);
      if (id < 0) continue;
      if (cfg.subsample && !subsample_decision(vocab, id, rng)) continue;
      arcs.push_back({id, static_cast<float>(e.posterior)});
    }
    if (!arcs.empty()) view.push_back(std::move(arcs));
  }
  return view;
}

// Top view: the highest-posterior token of each surviving bin.
std::vector<Arc> make_top_view(const ConfusionNetwork& net,
                               const Vocabulary& vocab,
                               const SamplerConfig& cfg, Rng& rng) {
  std::vector<Arc> view;
  view.reserve(net.bins.size());
  for (const auto& bin : net.bins) {
    if (bin.entries.empty()) continue;
    const BinEntry& top = bin.entries.front();
    if (top.word == kEpsToken) continue;
    int32_t id = vocab.id_of(top.word);
    if (id < 0) continue;
    if (cfg.subsample && !subsample_decision(vocab, id, rng)) continue;
    view.push_back({id, static_cast<float>(top.posterior)});
  }
  return view;
}

int window_for(const SamplerConfig& cfg, Rng& rng) {
  if (!cfg.dynamic_window) return cfg.skip_window;
  return 1 + static_cast<int>(uniform_index(
                 rng, static_cast<uint64_t>(cfg.skip_window)));
}

void emit(std::vector<TrainingPair>& pairs, std::vector<float>* weights,
          const SamplerConfig& cfg, const Arc& center, const Arc& context) {
  pairs.push_back({center.id, context.id});
  if (cfg.posterior_weighted && weights)
    weights->push_back(center.post * context.post);
}

void top_pairs(const std::vector<Arc>& view, const SamplerConfig& cfg,
               Rng& rng, std::vector<TrainingPair>& pairs,
               std::vector<float>* weights) {
  const int64_t t_count = static_cast<int64_t>(view.size());
  for (int64_t t = 0; t < t_count; ++t) {
    int w = window_for(cfg, rng);
    int64_t lo = std::max<int64_t>(0, t - w);
    int64_t hi = std::min<int64_t>(t_count - 1, t + w);
    for (int64_t u = lo; u <= hi; ++u) {
      if (u == t) continue;
      emit(pairs, weights, cfg, view[t], view[u]);
    }
  }
}

void intra_pairs(const std::vector<std::vector<Arc>>& view,
                 const SamplerConfig& cfg, std::vector<TrainingPair>& pairs,
                 std::vector<float>* weights) {
  for (const auto& bin : view) {
    const size_t n = bin.size();
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i) {
        if (i == j) continue;  // a word never predicts itself
        emit(pairs, weights, cfg, bin[j], bin[i]);
      }
  }
}

void inter_pairs(const std::vector<std::vector<Arc>>& view,
                 const SamplerConfig& cfg, Rng& rng,
                 std::vector<TrainingPair>& pairs,
                 std::vector<float>* weights) {
  const int64_t t_count = static_cast<int64_t>(view.size());
  for (int64_t t = 0; t < t_count; ++t) {
    int w = window_for(cfg, rng);
    int64_t lo = std::max<int64_t>(0, t - w);
    int64_t hi = std::min<int64_t>(t_count - 1, t + w);
    for (const auto& center : view[t])
      for (int64_t u = lo; u <= hi; ++u) {
        if (u == t) continue;
        for (const auto& context : view[u])
          emit(pairs, weights, cfg, center, context);
      }
  }
}

}  // namespace

int64_t count_pairs(const ConfusionNetwork& net, const SamplerConfig& cfg) {
  check_cfg(cfg);
  // Structural sizes after eps filtering only.
  std::vector<int64_t> sizes;
  sizes.reserve(net.bins.size());
  for (const auto& bin : net.bins) {
    if (bin.entries.empty()) continue;
    if (bin.entries.front().word == kEpsToken) continue;
    int64_t n = 0;
    for (const auto& e : bin.entries)
      if (e.word != kEpsToken) ++n;
    if (n > 0) sizes.push_back(n);
  }
  const int64_t t_count = static_cast<int64_t>(sizes.size());
  const int64_t s_w = cfg.skip_window;

  auto neighbors_sum = [&](int64_t t) {
    int64_t lo = std::max<int64_t>(0, t - s_w);
    int64_t hi = std::min<int64_t>(t_count - 1, t + s_w);
    int64_t sum = 0;
    for (int64_t u = lo; u <= hi; ++u)
      if (u != t) sum += sizes[u];
    return sum;
  };

  int64_t intra = 0, inter = 0, top = 0;
  for (int64_t t = 0; t < t_count; ++t) {
    intra += sizes[t] * (sizes[t] - 1);
    inter += sizes[t] * neighbors_sum(t);
    int64_t lo = std::max<int64_t>(0, t - s_w);
    int64_t hi = std::min<int64_t>(t_count - 1, t + s_w);
    top += (hi - lo);  // window slots minus the center itself
  }
  switch (cfg.scheme) {
    case Scheme::kTop:
      return top;
    case Scheme::kIntra:
      return intra;
    case Scheme::kInter:
      return inter;
    case Scheme::kHybrid:
      return intra + inter;
  }
  return 0;
}

void generate_pairs(const ConfusionNetwork& net, const Vocabulary& vocab,
                    const SamplerConfig& cfg, Rng& rng,
                    std::vector<TrainingPair>& pairs,
                    std::vector<float>* weights) {
  check_cfg(cfg);
  switch (cfg.scheme) {
    case Scheme::kTop: {
      auto view = make_top_view(net, vocab, cfg, rng);
      top_pairs(view, cfg, rng, pairs, weights);
      return;
    }
    case Scheme::kIntra: {
      auto view = make_bin_view(net, vocab, cfg, rng);
      intra_pairs(view, cfg, pairs, weights);
      return;
    }
    case Scheme::kInter: {
      auto view = make_bin_view(net, vocab, cfg, rng);
      inter_pairs(view, cfg, rng, pairs, weights);
      return;
    }
    case Scheme::kHybrid: {
      // Concatenation of the two streams; each draws its own view so the
      // subsampling noise is independent, like running the generators in
      // sequence.
      auto intra_view = make_bin_view(net, vocab, cfg, rng);
      intra_pairs(intra_view, cfg, pairs, weights);
      auto inter_view = make_bin_view(net, vocab, cfg, rng);
      inter_pairs(inter_view, cfg, rng, pairs, weights);
      return;
    }
  }
}

namespace {
std::vector<TrainingPair> gen_with(Scheme s, const ConfusionNetwork& net,
                                   const Vocabulary& vocab, SamplerConfig cfg,
                                   Rng& rng) {
  cfg.scheme = s;
  std::vector<TrainingPair> pairs;
  generate_pairs(net, vocab, cfg, rng, pairs, nullptr);
  return pairs;
}
}  // namespace

std::vector<TrainingPair> gen_top_pairs(const ConfusionNetwork& net,
                                        const Vocabulary& vocab,
                                        SamplerConfig cfg, Rng& rng) {
  return gen_with(Scheme::kTop, net, vocab, cfg, rng);
}
std::vector<TrainingPair> gen_intra_pairs(const ConfusionNetwork& net,
                                          const Vocabulary& vocab,
                                          SamplerConfig cfg, Rng& rng) {
  return gen_with(Scheme::kIntra, net, vocab, cfg, rng);
}
std::vector<TrainingPair> gen_inter_pairs(const ConfusionNetwork& net,
                                          const Vocabulary& vocab,
                                          SamplerConfig cfg, Rng& rng) {
  return gen_with(Scheme::kInter, net, vocab, cfg, rng);
}
std::vector<TrainingPair> gen_hybrid_pairs(const ConfusionNetwork& net,
                                           const Vocabulary& vocab,
                                           SamplerConfig cfg, Rng& rng) {
  return gen_with(Scheme::kHybrid, net, vocab, cfg, rng);
}

}  // namespace c2v
