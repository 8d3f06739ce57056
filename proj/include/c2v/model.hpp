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

#ifndef C2V_MODEL_HPP
#define C2V_MODEL_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "c2v/confnet.hpp"
#include "c2v/rng.hpp"
#include "c2v/sampler.hpp"
#include "c2v/vocab.hpp"

// Skip-gram negative-sampling embeddings over confusion-network pair streams.
// Double precision throughout: training is bit-reproducible with one worker,
// and the analytic gradients are checked against finite differences.

namespace c2v {

struct EmbeddingModel {
  int32_t dim = 0;
  // For concatenated models: number of leading coordinates that belong to the
  // first (contextual) block. 0 means "no subspace structure".
  int32_t subspace_boundary = 0;
  std::vector<std::string> words;  // id -> token
  std::vector<double> input;       // |words| x dim, row-major
  std::vector<double> output;      // |words| x dim, row-major

  int32_t size() const { return static_cast<int32_t>(words.size()); }
  int32_t id_of(const std::string& w) const {
    auto it = ids_.find(w);
    return it == ids_.end() ? -1 : it->second;
  }
  double* in_row(int32_t i) { return input.data() + size_t(i) * dim; }
  const double* in_row(int32_t i) const {
    return input.data() + size_t(i) * dim;
  }
  double* out_row(int32_t i) { return output.data() + size_t(i) * dim; }
  const double* out_row(int32_t i) const {
    return output.data() + size_t(i) * dim;
  }
  std::vector<double> vector_of(const std::string& w) const;

  // Call after touching `words` directly (loaders do; everyone else goes
  // through the factory functions).
  void rebuild_index();

 private:
  std::unordered_map<std::string, int32_t> ids_;
};

// Input rows ~ U[-0.5/dim, 0.5/dim), output rows zero. dim must be >= 8.
EmbeddingModel init_random(const Vocabulary& vocab, int32_t dim,
                           uint64_t seed);

// init_random, then overwrite rows whose token appears in `external`.
// Dimensions must match. `matched` (optional) reports how many rows were
// seeded from the external model. An external model covering zero vocabulary
// words leaves the result identical to init_random.
EmbeddingModel init_pretrained(const Vocabulary& vocab, int32_t dim,
                               const EmbeddingModel& external, uint64_t seed,
                               int32_t* matched = nullptr);
EmbeddingModel init_pretrained(const Vocabulary& vocab, int32_t dim,
                               const std::string& embeddings_path,
                               uint64_t seed, int32_t* matched = nullptr);

// Loss and analytic gradients of one (center, context) pair with explicit
// negatives: L = -log sigma(u_ctx . v_c) - sum_neg log sigma(-u_neg . v_c).
// Pure; negatives must not contain the true context.
struct PairGradients {
  double loss = 0.0;
  std::vector<double> grad_center;                // dL/d v_center
  std::vector<double> grad_context;               // dL/d u_context
  std::vector<std::vector<double>> grad_negatives;  // dL/d u_neg, per negative
};
PairGradients pair_loss_and_grads(const EmbeddingModel& m, TrainingPair pair,
                                  const std::vector<int32_t>& negatives);

struct TrainConfig {
  int epochs = 15;
  int negatives = 64;
  int batch_size = 256;  // pairs between learning-rate updates
  double lr_initial = 0.025;
  double lr_final = -1.0;  // < 0 resolves to lr_initial * 1e-4
  int workers = 1;         // 1 = fully deterministic
  int32_t freeze_prefix = 0;  // coordinates < freeze_prefix never move
  uint64_t seed = 1;
};

struct TrainStats {
  int64_t planned_pairs_per_epoch = 0;  // analytic count_pairs total
  int64_t pairs_processed = 0;          // actual, after subsampling
  std::vector<double> epoch_mean_loss;
  double seconds = 0.0;
};

// SGD over the pair stream of `nets` under `scfg`. The model must have been
// initialized against `vocab`. Learning rate decays linearly from lr_initial
// to lr_final over the planned pair total. Workers shard networks round-robin
// and update the matrices concurrently (hogwild); worker rng streams are
// derived from (seed, worker index).
TrainStats train(EmbeddingModel& m, const Vocabulary& vocab,
                 const std::vector<ConfusionNetwork>& nets,
                 const SamplerConfig& scfg, const TrainConfig& cfg);

// Row-wise concatenation of two models over the identical word list (same
// words, same order). Result dim = a.dim + b.dim, subspace_boundary = a.dim;
// both input and output matrices are concatenated.
EmbeddingModel concat_models(const EmbeddingModel& a, const EmbeddingModel& b);

// Zero-pad both matrices to target_dim (>= m.dim); cosine geometry among
// existing rows is unchanged. subspace_boundary = m.dim.
EmbeddingModel pad_model(const EmbeddingModel& m, int32_t target_dim);

struct Neighbor {
  int32_t id;
  double cosine;
};

// Top-k rows by cosine against `query`, skipping ids in `exclude` and rows
// with zero norm; ties break toward the smaller id. Zero-norm query ->
// NumericError.
std::vector<Neighbor> nearest(const EmbeddingModel& m,
                              const std::vector<double>& query, int top_k,
                              const std::vector<int32_t>& exclude);

// Text format: "n d" header, then one row per word, 9 significant digits.
// Only input vectors are serialized (the interchange convention); loading
// yields zero output vectors.
void save_embeddings(const EmbeddingModel& m, const std::string& path);
EmbeddingModel load_embeddings(const std::string& path);

}  // namespace c2v

#endif  // C2V_MODEL_HPP
