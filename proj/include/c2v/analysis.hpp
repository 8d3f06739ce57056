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

#ifndef C2V_ANALYSIS_HPP
#define C2V_ANALYSIS_HPP

#include <string>
#include <vector>

#include "c2v/confnet.hpp"
#include "c2v/model.hpp"

// Inspection utilities: 2-D PCA projections of selected word vectors, and
// posterior-weighted feature vectors of whole confusion networks.

namespace c2v {

struct Projection2D {
  std::vector<std::string> words;  // in-vocabulary inputs, original order
  std::vector<double> x, y;        // coordinates along the two components
  double explained_variance[2] = {0.0, 0.0};  // top eigenvalues, descending
  int64_t dropped = 0;             // inputs skipped as out-of-vocabulary
};

// Project the vectors of `words` onto their two principal axes (sample
// covariance; power iteration with deflation, tolerance 1e-10, at most 10000
// iterations; each eigenvector's first non-negligible component is made
// positive). Fewer than 3 in-vocabulary words -> DataError; identical
// vectors (rank-0 covariance) -> NumericError.
Projection2D pca_2d(const EmbeddingModel& m,
                    const std::vector<std::string>& words);

// Posterior-weighted sum of input vectors over every arc of every bin,
// skipping "<eps>" and out-of-vocabulary words. No in-vocabulary arc at all
// -> DataError.
std::vector<double> lattice_feature_vector(const ConfusionNetwork& net,
                                           const EmbeddingModel& m);

// Cosine between the feature vectors of two networks under the same model.
// Zero-norm feature vector -> NumericError.
double confnet_similarity(const ConfusionNetwork& a, const ConfusionNetwork& b,
                          const EmbeddingModel& m);

}  // namespace c2v

#endif  // C2V_ANALYSIS_HPP
