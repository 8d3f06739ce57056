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

#include "c2v/model.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "c2v/errors.hpp"
#include "c2v/text_io.hpp"

namespace c2v {

namespace {

inline double sigmoid(double x) {
  if (x >= 0.0) {
    double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + exp(x)), overflow-safe. -log sigma(x) == softplus(-x).
inline double softplus(double x) {
  if (x > 36.0) return x;
  if (x < -36.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

inline double dot(const double* a, const double* b, int32_t d) {
  double s = 0.0;
  for (int32_t j = 0; j < d; ++j) s += a[j] * b[j];
  return s;
}

void check_dim(int32_t dim) {
  if (dim < 8) throw DataError("embedding dim must be >= 8");
}

EmbeddingModel model_shell(const Vocabulary& vocab, int32_t dim) {
  EmbeddingModel m;
  m.dim = dim;
  m.words.reserve(vocab.size());
  for (int32_t i = 0; i < vocab.size(); ++i) m.words.push_back(vocab.word(i));
  m.input.assign(size_t(vocab.size()) * dim, 0.0);
  m.output.assign(size_t(vocab.size()) * dim, 0.0);
  m.rebuild_index();
  return m;
}

}  // namespace

void EmbeddingModel::rebuild_index() {
  ids_.clear();
  ids_.reserve(words.size() * 2);
  for (size_t i = 0; i < words.size(); ++i) {
    if (!ids_.emplace(words[i], static_cast<int32_t>(i)).second)
      throw DataError("duplicate word in model: '" + words[i] + "'");
  }
}

std::vector<double> EmbeddingModel::vector_of(const std::string& w) const {
  int32_t id = id_of(w);
  if (id < 0) throw DataError("word not in model: '" + w + "'");
  return std::vector<double>(in_row(id), in_row(id) + dim);
}

EmbeddingModel init_random(const Vocabulary& vocab, int32_t dim,
                           uint64_t seed) {
  check_dim(dim);
  EmbeddingModel m = model_shell(vocab, dim);
  Rng rng = make_rng(seed);
  const double half = 0.5 / dim;
  for (double& x : m.input) x = uniform_real(rng, -half, half);
  return m;
}

EmbeddingModel init_pretrained(const Vocabulary& vocab, int32_t dim,
                               const EmbeddingModel& external, uint64_t seed,
                               int32_t* matched) {
  if (external.dim != dim)
    throw DataError("pretrained dim " + std::to_string(external.dim) +
                    " does not match requested dim " + std::to_string(dim));
  EmbeddingModel m = init_random(vocab, dim, seed);
  int32_t hits = 0;
  for (int32_t i = 0; i < m.size(); ++i) {
    int32_t src = external.id_of(m.words[i]);
    if (src < 0) continue;
    std::copy(external.in_row(src), external.in_row(src) + dim, m.in_row(i));
    ++hits;
  }
  if (matched) *matched = hits;
  return m;
}

EmbeddingModel init_pretrained(const Vocabulary& vocab, int32_t dim,
                               const std::string& embeddings_path,
                               uint64_t seed, int32_t* matched) {
  return init_pretrained(vocab, dim, load_embeddings(embeddings_path), seed,
                         matched);
}

PairGradients pair_loss_and_grads(const EmbeddingModel& m, TrainingPair pair,
                                  const std::vector<int32_t>& negatives) {
  const int32_t d = m.dim;
  auto in_range = [&](int32_t id) { return id >= 0 && id < m.size(); };
  if (!in_range(pair.center) || !in_range(pair.context))
    throw DataError("pair id out of range");
  for (int32_t n : negatives) {
    if (!in_range(n)) throw DataError("negative id out of range");
    if (n == pair.context)
      throw DataError("negative sample equals the true context");
  }

  PairGradients g;
  g.grad_center.assign(d, 0.0);
  g.grad_context.assign(d, 0.0);
  g.grad_negatives.assign(negatives.size(), std::vector<double>(d, 0.0));

  const double* v = m.in_row(pair.center);
  {
    const double* u = m.out_row(pair.context);
    double z = dot(u, v, d);
    double s = sigmoid(z);
    g.loss += softplus(-z);  // -log sigma(z)
    double coeff = s - 1.0;
    for (int32_t j = 0; j < d; ++j) {
      g.grad_center[j] += coeff * u[j];
      g.grad_context[j] = coeff * v[j];
    }
  }
  for (size_t k = 0; k < negatives.size(); ++k) {
    const double* u = m.out_row(negatives[k]);
    double z = dot(u, v, d);
    double s = sigmoid(z);
    g.loss += softplus(z);  // -log sigma(-z)
    for (int32_t j = 0; j < d; ++j) {
      g.grad_center[j] += s * u[j];
      g.grad_negatives[k][j] = s * v[j];
    }
  }
  return g;
}

namespace {

// One fused SGD step; returns the pair loss. `acc` is caller scratch of size
// dim. Updates skip coordinates below `freeze`. Gradients are scaled by
// `weight` (posterior-weighted mode); the returned loss is unweighted.
double sgd_step(EmbeddingModel& m, int32_t center, int32_t context,
                const int32_t* negs, int k, double lr, double weight,
                int32_t freeze, double* acc) {
  const int32_t d = m.dim;
  double* v = m.in_row(center);
  for (int32_t j = 0; j < d; ++j) acc[j] = 0.0;
  double loss = 0.0;

  {
    double* u = m.out_row(context);
    double z = dot(u, v, d);
    double s = sigmoid(z);
    loss += softplus(-z);
    double g = (s - 1.0) * weight;
    for (int32_t j = 0; j < d; ++j) acc[j] += g * u[j];
    for (int32_t j = freeze; j < d; ++j) u[j] -= lr * g * v[j];
  }
  for (int i = 0; i < k; ++i) {
    double* u = m.out_row(negs[i]);
    double z = dot(u, v, d);
    double s = sigmoid(z);
    loss += softplus(z);
    double g = s * weight;
    for (int32_t j = 0; j < d; ++j) acc[j] += g * u[j];
    for (int32_t j = freeze; j < d; ++j) u[j] -= lr * g * v[j];
  }
  for (int32_t j = freeze; j < d; ++j) v[j] -= lr * acc[j];
  return loss;
}

}  // namespace

TrainStats train(EmbeddingModel& m, const Vocabulary& vocab,
                 const std::vector<ConfusionNetwork>& nets,
                 const SamplerConfig& scfg, const TrainConfig& cfg) {
  if (cfg.epochs < 1) throw DataError("epochs must be >= 1");
  if (scfg.skip_window < 1) throw DataError("skip_window must be >= 1");
  if (cfg.negatives < 1) throw DataError("negatives must be >= 1");
  if (cfg.negatives > 4096) throw DataError("negatives must be <= 4096");
  if (cfg.batch_size < 1) throw DataError("batch_size must be >= 1");
  if (!(cfg.lr_initial > 0.0)) throw DataError("lr_initial must be > 0");
  if (cfg.workers < 1) throw DataError("workers must be >= 1");
  if (cfg.freeze_prefix < 0 || cfg.freeze_prefix > m.dim)
    throw DataError("freeze_prefix must be in [0, dim]");
  if (vocab.size() < 2)
    throw DataError("training needs a vocabulary of at least 2 words");
  if (m.size() != vocab.size())
    throw DataError("model/vocabulary size mismatch");
  for (int32_t i = 0; i < m.size(); ++i)
    if (m.words[i] != vocab.word(i))
      throw DataError("model/vocabulary word mismatch at id " +
                      std::to_string(i));
  const double lr_final =
      cfg.lr_final < 0.0 ? cfg.lr_initial * 1e-4 : cfg.lr_final;
  if (lr_final > cfg.lr_initial)
    throw DataError("lr_final must not exceed lr_initial");

  TrainStats stats;
  for (const auto& net : nets)
    stats.planned_pairs_per_epoch += count_pairs(net, scfg);
  if (stats.planned_pairs_per_epoch == 0)
    throw DataError("empty pair stream: nothing to train on");
  const double total_planned =
      static_cast<double>(stats.planned_pairs_per_epoch) * cfg.epochs;

  const int n_workers = cfg.workers;
  std::vector<Rng> worker_rng;
  worker_rng.reserve(n_workers);
  for (int w = 0; w < n_workers; ++w)
    worker_rng.push_back(make_rng(cfg.seed, static_cast<uint64_t>(w)));

  std::atomic<int64_t> processed_global{0};
  auto t0 = std::chrono::steady_clock::now();

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<double> worker_loss(n_workers, 0.0);
    std::vector<int64_t> worker_pairs(n_workers, 0);

    auto run_worker = [&](int w) {
      Rng& rng = worker_rng[w];
      std::vector<TrainingPair> pairs;
      std::vector<float> weights;
      std::vector<double> acc(m.dim);
      std::vector<int32_t> negs(cfg.negatives);
      double lr = std::max(
          lr_final,
          cfg.lr_initial -
              (cfg.lr_initial - lr_final) *
                  (processed_global.load(std::memory_order_relaxed) /
                   total_planned));
      int in_batch = 0;
      double loss_sum = 0.0;
      int64_t n_pairs = 0;

      for (size_t ni = w; ni < nets.size(); ni += n_workers) {
        pairs.clear();
        weights.clear();
        generate_pairs(nets[ni], vocab, scfg, rng, pairs,
                       scfg.posterior_weighted ? &weights : nullptr);
        for (size_t p = 0; p < pairs.size(); ++p) {
          const int32_t context = pairs[p].context;
          for (int i = 0; i < cfg.negatives; ++i) {
            int32_t neg = negative_sample(vocab, rng);
            // Redraw collisions with the true context (bounded; a draw can
            // almost never collide 32 times with vocab >= 2).
            for (int tries = 0; neg == context && tries < 32; ++tries)
              neg = negative_sample(vocab, rng);
            negs[i] = neg;
          }
          double weight = scfg.posterior_weighted ? weights[p] : 1.0;
          loss_sum += sgd_step(m, pairs[p].center, context, negs.data(),
                               cfg.negatives, lr, weight, cfg.freeze_prefix,
                               acc.data());
          ++n_pairs;
          if (++in_batch >= cfg.batch_size) {
            int64_t done = processed_global.fetch_add(
                               in_batch, std::memory_order_relaxed) +
                           in_batch;
            in_batch = 0;
            lr = std::max(lr_final,
                          cfg.lr_initial -
                              (cfg.lr_initial - lr_final) *
                                  (static_cast<double>(done) / total_planned));
          }
        }
      }
      if (in_batch > 0)
        processed_global.fetch_add(in_batch, std::memory_order_relaxed);
      worker_loss[w] = loss_sum;
      worker_pairs[w] = n_pairs;
    };

    if (n_workers == 1) {
      run_worker(0);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(n_workers);
      for (int w = 0; w < n_workers; ++w) threads.emplace_back(run_worker, w);
      for (auto& t : threads) t.join();
    }

    double loss = 0.0;
    int64_t count = 0;
    for (int w = 0; w < n_workers; ++w) {
      loss += worker_loss[w];
      count += worker_pairs[w];
    }
    stats.pairs_processed += count;
    stats.epoch_mean_loss.push_back(count ? loss / count : 0.0);
  }

  stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return stats;
}

EmbeddingModel concat_models(const EmbeddingModel& a,
                             const EmbeddingModel& b) {
  if (a.size() != b.size())
    throw DataError("concat: vocabulary sizes differ (" +
                    std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  for (int32_t i = 0; i < a.size(); ++i)
    if (a.words[i] != b.words[i])
      throw DataError("concat: vocabularies differ at id " +
                      std::to_string(i) + " ('" + a.words[i] + "' vs '" +
                      b.words[i] + "')");
  EmbeddingModel m;
  m.dim = a.dim + b.dim;
  m.subspace_boundary = a.dim;
  m.words = a.words;
  m.input.resize(size_t(a.size()) * m.dim);
  m.output.resize(size_t(a.size()) * m.dim);
  for (int32_t i = 0; i < a.size(); ++i) {
    std::copy(a.in_row(i), a.in_row(i) + a.dim, m.in_row(i));
    std::copy(b.in_row(i), b.in_row(i) + b.dim, m.in_row(i) + a.dim);
    std::copy(a.out_row(i), a.out_row(i) + a.dim, m.out_row(i));
    std::copy(b.out_row(i), b.out_row(i) + b.dim, m.out_row(i) + a.dim);
  }
  m.rebuild_index();
  return m;
}

EmbeddingModel pad_model(const EmbeddingModel& m, int32_t target_dim) {
  if (target_dim < m.dim)
    throw DataError("pad target dim " + std::to_string(target_dim) +
                    " is smaller than model dim " + std::to_string(m.dim));
  EmbeddingModel out;
  out.dim = target_dim;
  out.subspace_boundary = m.dim;
  out.words = m.words;
  out.input.assign(size_t(m.size()) * target_dim, 0.0);
  out.output.assign(size_t(m.size()) * target_dim, 0.0);
  for (int32_t i = 0; i < m.size(); ++i) {
    std::copy(m.in_row(i), m.in_row(i) + m.dim, out.in_row(i));
    std::copy(m.out_row(i), m.out_row(i) + m.dim, out.out_row(i));
  }
  out.rebuild_index();
  return out;
}

std::vector<Neighbor> nearest(const EmbeddingModel& m,
                              const std::vector<double>& query, int top_k,
                              const std::vector<int32_t>& exclude) {
  if (static_cast<int32_t>(query.size()) != m.dim)
    throw DataError("query dim mismatch");
  if (top_k < 1) throw DataError("top_k must be >= 1");
  double qnorm = std::sqrt(dot(query.data(), query.data(), m.dim));
  if (!(qnorm > 0.0)) throw NumericError("zero-norm query vector");

  std::vector<Neighbor> scored;
  scored.reserve(m.size());
  for (int32_t i = 0; i < m.size(); ++i) {
    if (std::find(exclude.begin(), exclude.end(), i) != exclude.end())
      continue;
    const double* row = m.in_row(i);
    double rnorm = std::sqrt(dot(row, row, m.dim));
    if (!(rnorm > 0.0)) continue;
    scored.push_back({i, dot(row, query.data(), m.dim) / (qnorm * rnorm)});
  }
  auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.cosine != b.cosine) return a.cosine > b.cosine;
    return a.id < b.id;
  };
  size_t k = std::min<size_t>(top_k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + k, scored.end(), better);
  scored.resize(k);
  return scored;
}

void save_embeddings(const EmbeddingModel& m, const std::string& path) {
  auto out = open_output(path);
  out << m.size() << ' ' << m.dim << '\n';
  for (int32_t i = 0; i < m.size(); ++i) {
    out << m.words[i];
    const double* row = m.in_row(i);
    for (int32_t j = 0; j < m.dim; ++j)
      out << ' ' << format_double(row[j], 9);
    out << '\n';
  }
}

EmbeddingModel load_embeddings(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  size_t lineno = 0;
  if (!std::getline(in, line)) throw DataError("empty embedding file: " + path);
  ++lineno;
  auto header = split_ws(line);
  if (header.size() != 2)
    throw ParseError(path, lineno, "expected header 'count dim'");
  auto n = parse_int(header[0]);
  auto d = parse_int(header[1]);
  if (!n || !d || *n < 1 || *d < 1)
    throw ParseError(path, lineno, "bad embedding header");

  EmbeddingModel m;
  m.dim = static_cast<int32_t>(*d);
  m.words.reserve(*n);
  m.input.reserve(size_t(*n) * m.dim);
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    auto fields = split_ws(sv);
    if (fields.size() != static_cast<size_t>(m.dim) + 1)
      throw ParseError(path, lineno,
                       "expected 1 token + " + std::to_string(m.dim) +
                           " values, got " + std::to_string(fields.size()) +
                           " fields");
    m.words.emplace_back(fields[0]);
    for (int32_t j = 1; j <= m.dim; ++j) {
      auto v = parse_double(fields[j]);
      if (!v) throw ParseError(path, lineno, "bad value in embedding row");
      m.input.push_back(*v);
    }
    if (static_cast<long long>(m.words.size()) > *n)
      throw ParseError(path, lineno, "more rows than the header announced");
  }
  if (static_cast<long long>(m.words.size()) != *n)
    throw DataError(path + ": header announced " + std::to_string(*n) +
                    " rows, found " + std::to_string(m.words.size()));
  m.output.assign(m.input.size(), 0.0);
  m.rebuild_index();  // throws on duplicate words
  return m;
}

}  // namespace c2v
