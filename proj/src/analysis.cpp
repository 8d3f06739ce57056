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

#include "c2v/analysis.hpp"

#include <cmath>

#include "c2v/errors.hpp"
#include "c2v/rng.hpp"

namespace c2v {

namespace {

constexpr double kTol = 1e-10;
constexpr int kMaxIter = 10000;

// Power iteration on the sample covariance of the centered rows `x`
// (n rows, d columns, row-major), optionally deflating a prior eigenvector.
// Returns the unit eigenvector; eigenvalue via out-param.
std::vector<double> power_iteration(const std::vector<double>& x, size_t n,
                                    size_t d, const std::vector<double>* prior,
                                    double* eigenvalue) {
  const double denom = static_cast<double>(n - 1);
  auto deflate = [&](std::vector<double>& w) {
    if (!prior) return;
    double proj = 0.0;
    for (size_t j = 0; j < d; ++j) proj += w[j] * (*prior)[j];
    for (size_t j = 0; j < d; ++j) w[j] -= proj * (*prior)[j];
  };
  auto norm_of = [&](const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) s += v * v;
    return std::sqrt(s);
  };
  auto cov_apply = [&](const std::vector<double>& w, std::vector<double>& out,
                       std::vector<double>& scratch_rows) {
    // C w = X^T (X w) / (n - 1): O(n d) per application.
    for (size_t i = 0; i < n; ++i) {
      double s = 0.0;
      const double* row = x.data() + i * d;
      for (size_t j = 0; j < d; ++j) s += row[j] * w[j];
      scratch_rows[i] = s;
    }
    for (size_t j = 0; j < d; ++j) out[j] = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double* row = x.data() + i * d;
      double s = scratch_rows[i];
      for (size_t j = 0; j < d; ++j) out[j] += s * row[j];
    }
    for (size_t j = 0; j < d; ++j) out[j] /= denom;
  };

  // Deterministic pseudo-random start direction.
  Rng rng = make_rng(0xc2b2ae3d27d4eb4fULL);
  std::vector<double> w(d);
  for (size_t j = 0; j < d; ++j) w[j] = uniform_real(rng, -1.0, 1.0);
  deflate(w);
  double nw = norm_of(w);
  std::vector<double> next(d), scratch(n);

  auto complement_fallback = [&]() {
    // Remaining space carries no variance (e.g. rank-1 data): return a
    // deterministic unit vector orthogonal to the prior, eigenvalue 0.
    for (size_t basis = 0; basis < d; ++basis) {
      std::vector<double> r(d, 0.0);
      r[basis] = 1.0;
      deflate(r);
      double nr = norm_of(r);
      if (nr > 1e-8) {
        for (size_t j = 0; j < d; ++j) r[j] /= nr;
        *eigenvalue = 0.0;
        return r;
      }
    }
    throw NumericError("pca: cannot construct orthogonal complement");
  };

  if (!(nw > 0.0)) return complement_fallback();
  for (size_t j = 0; j < d; ++j) w[j] /= nw;

  for (int iter = 0; iter < kMaxIter; ++iter) {
    cov_apply(w, next, scratch);
    deflate(next);
    double nn = norm_of(next);
    if (nn < 1e-14) return complement_fallback();
    for (size_t j = 0; j < d; ++j) next[j] /= nn;
    double delta = 0.0;
    for (size_t j = 0; j < d; ++j) {
      double diff = next[j] - w[j];
      delta += diff * diff;
    }
    w.swap(next);
    if (std::sqrt(delta) < kTol) {
      cov_apply(w, next, scratch);
      double lambda = 0.0;
      for (size_t j = 0; j < d; ++j) lambda += w[j] * next[j];
      *eigenvalue = lambda;
      return w;
    }
  }
  throw NumericError("pca: power iteration did not converge");
}

void fix_sign(std::vector<double>& v) {
  double maxabs = 0.0;
  for (double c : v) maxabs = std::max(maxabs, std::fabs(c));
  for (double c : v) {
    // The cutoff must dominate the iteration tolerance, or residual noise in
    // a genuinely-zero leading component would decide the sign.
    if (std::fabs(c) > 1e-6 * maxabs) {
      if (c < 0.0)
        for (double& w : v) w = -w;
      return;
    }
  }
}

}  // namespace

Projection2D pca_2d(const EmbeddingModel& m,
                    const std::vector<std::string>& words) {
  Projection2D proj;
  std::vector<const double*> rows;
  for (const auto& w : words) {
    int32_t id = m.id_of(w);
    if (id < 0) {
      ++proj.dropped;
      continue;
    }
    proj.words.push_back(w);
    rows.push_back(m.in_row(id));
  }
  const size_t n = rows.size();
  const size_t d = static_cast<size_t>(m.dim);
  if (n < 3) throw DataError("pca needs at least 3 in-vocabulary words");

  std::vector<double> mean(d, 0.0);
  for (const double* r : rows)
    for (size_t j = 0; j < d; ++j) mean[j] += r[j];
  for (size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);

  std::vector<double> x(n * d);
  double total_var = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < d; ++j) {
      double c = rows[i][j] - mean[j];
      x[i * d + j] = c;
      total_var += c * c;
    }
  if (!(total_var > 0.0))
    throw NumericError("pca: covariance has rank 0 (identical vectors)");

  double l1 = 0.0, l2 = 0.0;
  auto v1 = power_iteration(x, n, d, nullptr, &l1);
  auto v2 = power_iteration(x, n, d, &v1, &l2);
  fix_sign(v1);
  fix_sign(v2);
  proj.explained_variance[0] = l1;
  proj.explained_variance[1] = l2;
  proj.x.resize(n);
  proj.y.resize(n);
  for (size_t i = 0; i < n; ++i) {
    double px = 0.0, py = 0.0;
    for (size_t j = 0; j < d; ++j) {
      px += x[i * d + j] * v1[j];
      py += x[i * d + j] * v2[j];
    }
    proj.x[i] = px;
    proj.y[i] = py;
  }
  return proj;
}

std::vector<double> lattice_feature_vector(const ConfusionNetwork& net,
                                           const EmbeddingModel& m) {
  std::vector<double> feat(m.dim, 0.0);
  bool any = false;
  for (const auto& bin : net.bins)
    for (const auto& e : bin.entries) {
      if (e.word == kEpsToken) continue;
      int32_t id = m.id_of(e.word);
      if (id < 0) continue;
      const double* row = m.in_row(id);
      for (int32_t j = 0; j < m.dim; ++j) feat[j] += e.posterior * row[j];
      any = true;
    }
  if (!any)
    throw DataError("network has no in-vocabulary arcs for feature vector");
  return feat;
}

double confnet_similarity(const ConfusionNetwork& a, const ConfusionNetwork& b,
                          const EmbeddingModel& m) {
  auto fa = lattice_feature_vector(a, m);
  auto fb = lattice_feature_vector(b, m);
  double dab = 0.0, daa = 0.0, dbb = 0.0;
  for (int32_t j = 0; j < m.dim; ++j) {
    dab += fa[j] * fb[j];
    daa += fa[j] * fa[j];
    dbb += fb[j] * fb[j];
  }
  if (!(daa > 0.0) || !(dbb > 0.0))
    throw NumericError("zero-norm lattice feature vector");
  return dab / std::sqrt(daa * dbb);
}

}  // namespace c2v
