// Copyright 2026 The dinet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "dinet/model.hpp"
#include "dinet/random.hpp"

namespace dinet {

struct KMeansOptions {
  int restarts = 20;
  int max_iters = 300;
  /// Stop when the relative cost improvement falls below this.
  double rel_tol = 1e-12;
};

struct KMeansResult {
  ColumnLabels labels;
  Matrix centers;
  /// Sum over rows of the squared distance to the assigned center.
  double cost = 0.0;
  int restarts_used = 0;
  /// Lloyd iterations of the winning restart.
  int iterations = 0;
  /// Cost after each Lloyd iteration of the winning restart; non-increasing.
  std::vector<double> cost_trace;
};

/// Best of `opts.restarts` Lloyd runs from k-means++ seeds. Restart r draws
/// from derive_seed(seed, kKMeansRestart, 0, r); ties in cost go to the lowest
/// restart index.
KMeansResult kmeans_rows(const Matrix& x, Index k_clusters, std::uint64_t seed,
                         const KMeansOptions& opts = {});

inline KMeansResult kmeans_rows(const Matrix& x, Index k_clusters,
                                std::uint64_t seed, int restarts,
                                int max_iters) {
  KMeansOptions opts;
  opts.restarts = restarts;
  opts.max_iters = max_iters;
  return kmeans_rows(x, k_clusters, seed, opts);
}

/// k-means++ seeding: first center uniform, then proportional to the squared
/// distance to the nearest chosen center.
Matrix kmeanspp_centers(const Matrix& x, Index k_clusters, Rng& rng);

/// Lloyd iterations from the given centers. An empty cluster is reseeded with
/// the row farthest from its currently assigned center.
KMeansResult lloyd(const Matrix& x, Matrix centers, int max_iters,
                   double rel_tol = 1e-12);

/// Sum of squared distances of rows to their assigned centers.
double clustering_cost(const Matrix& x, const Matrix& centers,
                       const std::vector<int>& labels);

}  // namespace dinet
