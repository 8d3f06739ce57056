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

#ifndef C2V_RNG_HPP
#define C2V_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Deterministic sampling helpers. The engine (std::mt19937_64) is fully
// specified by the standard; the transforms below avoid the standard
// distribution classes, whose output is implementation-defined. Everything a
// seeded command emits must be byte-identical across runs and toolchains.

namespace c2v {

using Rng = std::mt19937_64;

// Derive an independent stream for a worker/shard from a base seed.
inline Rng make_rng(uint64_t seed, uint64_t stream = 0) {
  // SplitMix64 mix of (seed, stream) so nearby seeds don't correlate.
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return Rng(z);
}

// Uniform double in [0, 1), 53-bit resolution.
inline double next_double(Rng& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi).
inline double uniform_real(Rng& g, double lo, double hi) {
  return lo + (hi - lo) * next_double(g);
}

// Unbiased uniform integer in [0, n). n must be > 0.
inline uint64_t uniform_index(Rng& g, uint64_t n) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

// Standard normal via Box-Muller (deterministic, no cached spare).
inline double next_normal(Rng& g) {
  double u1 = 1.0 - next_double(g);  // (0, 1], keeps log finite
  double u2 = next_double(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Gamma(alpha, 1) via Marsaglia-Tsang, with the alpha < 1 boost.
inline double next_gamma(Rng& g, double alpha) {
  if (alpha < 1.0) {
    double u = 1.0 - next_double(g);  // (0, 1]
    return next_gamma(g, alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = next_normal(g);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = 1.0 - next_double(g);  // (0, 1]
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Symmetric Dirichlet(alpha) of dimension k; sums to 1.
inline std::vector<double> next_dirichlet(Rng& g, double alpha, size_t k) {
  std::vector<double> out(k);
  double sum = 0.0;
  for (size_t i = 0; i < k; ++i) {
    out[i] = next_gamma(g, alpha);
    sum += out[i];
  }
  for (size_t i = 0; i < k; ++i) out[i] /= sum;
  return out;
}

// Partial Fisher-Yates: pick k distinct indices out of n, in draw order.
inline std::vector<size_t> sample_indices(Rng& g, size_t n, size_t k) {
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  if (k > n) k = n;
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + static_cast<size_t>(uniform_index(g, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace c2v

#endif  // C2V_RNG_HPP
