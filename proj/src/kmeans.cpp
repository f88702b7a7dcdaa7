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

#include "dinet/kmeans.hpp"

#include <limits>
#include <optional>
#include <string>

#include "dinet/errors.hpp"

namespace dinet {

namespace {

// Nearest center per row, lowest center index on ties.
double assign(const Matrix& x, const Matrix& centers, std::vector<int>& labels,
              Vector& dist_sq) {
  double cost = 0.0;
  for (Index i = 0; i < x.rows(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Index c = 0; c < centers.rows(); ++c) {
      const double d = (x.row(i) - centers.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
    dist_sq(i) = best_d;
    cost += best_d;
  }
  return cost;
}

// Recomputes centers as cluster means; returns the ids of empty clusters.
std::vector<Index> update_centers(const Matrix& x,
                                  const std::vector<int>& labels,
                                  Matrix& centers) {
  const Index k = centers.rows();
  Matrix sums = Matrix::Zero(k, x.cols());
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  for (Index i = 0; i < x.rows(); ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    sums.row(l) += x.row(i);
    ++counts[static_cast<std::size_t>(l)];
  }
  std::vector<Index> empty;
  for (Index c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] == 0) {
      empty.push_back(c);
    } else {
      centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }
  }
  return empty;
}

}  // namespace

double clustering_cost(const Matrix& x, const Matrix& centers,
                       const std::vector<int>& labels) {
  double cost = 0.0;
  for (Index i = 0; i < x.rows(); ++i) {
    cost += (x.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return cost;
}

Matrix kmeanspp_centers(const Matrix& x, Index k_clusters, Rng& rng) {
  const Index n = x.rows();
  Matrix centers(k_clusters, x.cols());
  const auto first = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
  centers.row(0) = x.row(first);
  Vector d2(n);
  for (Index i = 0; i < n; ++i) d2(i) = (x.row(i) - centers.row(0)).squaredNorm();

  for (Index c = 1; c < k_clusters; ++c) {
    const double total = d2.sum();
    Index pick = 0;
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double acc = 0.0;
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc > target && d2(i) > 0.0) {
          pick = i;
          break;
        }
      }
      // Guard against landing on a zero-weight tail through rounding.
      while (d2(pick) == 0.0 && pick > 0) --pick;
    } else {
      pick = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = x.row(pick);
    for (Index i = 0; i < n; ++i) {
      d2(i) = std::min(d2(i), (x.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

KMeansResult lloyd(const Matrix& x, Matrix centers, int max_iters,
                   double rel_tol) {
  const Index n = x.rows();
  const Index k = centers.rows();
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  Vector dist_sq(n);
  std::vector<double> trace;

  double cost = assign(x, centers, labels, dist_sq);
  trace.push_back(cost);
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    auto empty = update_centers(x, labels, centers);
    // Each repair moves the worst-fitting row into its own cluster.
    while (!empty.empty()) {
      std::vector<Index> counts(static_cast<std::size_t>(k), 0);
      for (int l : labels) ++counts[static_cast<std::size_t>(l)];
      for (Index c : empty) {
        // Farthest row whose cluster keeps at least one member; one exists
        // because k <= n.
        Index far = -1;
        for (Index i = 0; i < n; ++i) {
          const auto owner = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
          if (counts[owner] > 1 && (far < 0 || dist_sq(i) > dist_sq(far))) far = i;
        }
        --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
        ++counts[static_cast<std::size_t>(c)];
        centers.row(c) = x.row(far);
        dist_sq(far) = 0.0;
        labels[static_cast<std::size_t>(far)] = static_cast<int>(c);
      }
      empty = update_centers(x, labels, centers);
    }
    std::vector<int> next(static_cast<std::size_t>(n));
    const double next_cost = assign(x, centers, next, dist_sq);
    const bool unchanged = (next == labels);
    const double improvement = cost - next_cost;
    labels = std::move(next);
    trace.push_back(next_cost);
    cost = next_cost;
    if (unchanged || improvement <= rel_tol * std::max(cost + improvement, 0.0)) {
      ++iter;
      break;
    }
  }
  KMeansResult result{ColumnLabels(std::move(labels), static_cast<int>(k)),
                      std::move(centers), cost, 1, iter, std::move(trace)};
  return result;
}

KMeansResult kmeans_rows(const Matrix& x, Index k_clusters, std::uint64_t seed,
                         const KMeansOptions& opts) {
  if (k_clusters < 1 || k_clusters > x.rows()) {
    throw ParameterError("k-means: k = " + std::to_string(k_clusters) +
                         " outside [1, n = " + std::to_string(x.rows()) + "]");
  }
  if (opts.restarts < 1) throw ParameterError("k-means: restarts must be >= 1");
  if (opts.max_iters < 1) throw ParameterError("k-means: max_iters must be >= 1");

  std::optional<KMeansResult> best;
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(seed, SeedPurpose::kKMeansRestart, 0,
                        static_cast<std::uint64_t>(r)));
    auto run = lloyd(x, kmeanspp_centers(x, k_clusters, rng), opts.max_iters,
                     opts.rel_tol);
    if (!best || run.cost < best->cost) best = std::move(run);
  }
  best->restarts_used = opts.restarts;
  return std::move(*best);
}

}  // namespace dinet
