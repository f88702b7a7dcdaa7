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

#include "dinet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dinet/errors.hpp"

namespace dinet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// O(n^3) Hungarian method with row/column potentials. Returns the assigned
// column for each row.
std::vector<int> hungarian(const Matrix& cost) {
  const Index n = cost.rows();
  std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0),
      v(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<Index> match(static_cast<std::size_t>(n + 1), 0),
      way(static_cast<std::size_t>(n + 1), 0);
  for (Index i = 1; i <= n; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n + 1), kInf);
    std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const Index i0 = match[static_cast<std::size_t>(j0)];
      double delta = kInf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (used[uj]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[uj];
        if (cur < minv[uj]) {
          minv[uj] = cur;
          way[uj] = j0;
        }
        if (minv[uj] < delta) {
          delta = minv[uj];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (used[uj]) {
          u[static_cast<std::size_t>(match[uj])] += delta;
          v[uj] -= delta;
        } else {
          minv[uj] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const Index j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(static_cast<std::size_t>(n), 0);
  for (Index j = 1; j <= n; ++j) {
    assignment[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)] =
        static_cast<int>(j - 1);
  }
  return assignment;
}

double assignment_cost(const Matrix& cost, const std::vector<int>& perm) {
  double total = 0.0;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    total += cost(static_cast<Index>(k), perm[k]);
  }
  return total;
}

// Optimal cost of assigning rows [first, n) to the columns not in `taken`.
double residual_optimum(const Matrix& cost, Index first,
                        const std::vector<bool>& taken) {
  std::vector<Index> cols;
  for (Index j = 0; j < cost.cols(); ++j) {
    if (!taken[static_cast<std::size_t>(j)]) cols.push_back(j);
  }
  const Index m = static_cast<Index>(cols.size());
  if (m == 0) return 0.0;
  Matrix sub(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) sub(a, b) = cost(first + a, cols[static_cast<std::size_t>(b)]);
  }
  return assignment_cost(sub, hungarian(sub));
}

Matrix membership_cost(const Matrix& hat, const Matrix& truth) {
  const Index k = truth.cols();
  Matrix cost(k, k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      cost(a, b) = (hat.col(b) - truth.col(a)).cwiseAbs().sum();
    }
  }
  return cost;
}

}  // namespace

Assignment min_cost_assignment(const Matrix& cost) {
  if (cost.rows() != cost.cols()) {
    throw DimensionError("assignment cost matrix must be square");
  }
  const Index n = cost.rows();
  if (n == 0) return {};
  const double optimum = assignment_cost(cost, hungarian(cost));
  const double limit =
      optimum + kAssignmentTieTolerance * std::max(1.0, std::abs(optimum));

  Permutation perm(static_cast<std::size_t>(n), -1);
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  double prefix = 0.0;
  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < n; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      taken[static_cast<std::size_t>(j)] = true;
      const double best_rest = residual_optimum(cost, k + 1, taken);
      if (prefix + cost(k, j) + best_rest <= limit || j == n - 1) {
        perm[static_cast<std::size_t>(k)] = static_cast<int>(j);
        prefix += cost(k, j);
        break;
      }
      taken[static_cast<std::size_t>(j)] = false;
    }
    if (perm[static_cast<std::size_t>(k)] < 0) {
      // Unreachable in exact arithmetic; fall back to the plain optimum.
      Permutation plain = hungarian(cost);
      return {plain, assignment_cost(cost, plain)};
    }
  }
  return {perm, assignment_cost(cost, perm)};
}

std::pair<double, Permutation> mhamm(const RowMembership& pi_hat,
                                     const RowMembership& pi_true) {
  if (pi_hat.rows() != pi_true.rows() ||
      pi_hat.communities() != pi_true.communities()) {
    throw DimensionError("MHamm: membership matrices have different shapes");
  }
  if (pi_true.rows() == 0) throw DimensionError("MHamm: no rows");
  const Assignment best =
      min_cost_assignment(membership_cost(pi_hat.matrix(), pi_true.matrix()));
  return {best.cost / static_cast<double>(pi_true.rows()), best.perm};
}

std::pair<double, Permutation> hamm(const ColumnLabels& labels_hat,
                                    const ColumnLabels& labels_true, int k_c) {
  if (labels_hat.size() != labels_true.size()) {
    throw DimensionError("Hamm: label vectors have different lengths");
  }
  if (labels_true.size() == 0) throw DimensionError("Hamm: no labels");
  if (labels_hat.communities() > k_c || labels_true.communities() > k_c) {
    throw ParameterError("Hamm: labels exceed K_c = " + std::to_string(k_c));
  }
  // cost(k, j) = |T_k| + |T_hat_j| - 2 |T_k n T_hat_j|, the one-hot L1
  // distance between true column k and estimated column j.
  Matrix overlap = Matrix::Zero(k_c, k_c);
  Vector true_sizes = Vector::Zero(k_c), hat_sizes = Vector::Zero(k_c);
  for (Index i = 0; i < labels_true.size(); ++i) {
    overlap(labels_true[i], labels_hat[i]) += 1.0;
    true_sizes(labels_true[i]) += 1.0;
    hat_sizes(labels_hat[i]) += 1.0;
  }
  Matrix cost(k_c, k_c);
  for (Index k = 0; k < k_c; ++k) {
    for (Index j = 0; j < k_c; ++j) {
      cost(k, j) = true_sizes(k) + hat_sizes(j) - 2.0 * overlap(k, j);
    }
  }
  const Assignment best = min_cost_assignment(cost);
  return {best.cost / static_cast<double>(labels_true.size()), best.perm};
}

std::pair<double, Permutation> f_c_error(const ColumnLabels& partition_hat,
                                         const ColumnLabels& partition_true,
                                         int k_c) {
  if (partition_hat.size() != partition_true.size()) {
    throw DimensionError("f_c: partitions have different lengths");
  }
  if (k_c < 1 || k_c > kMaxFcCommunities) {
    throw ParameterError("f_c: exhaustive search supports 1 <= K_c <= " +
                         std::to_string(kMaxFcCommunities));
  }
  if (partition_hat.communities() > k_c || partition_true.communities() > k_c) {
    throw ParameterError("f_c: labels exceed K_c = " + std::to_string(k_c));
  }
  const auto kc = static_cast<std::size_t>(k_c);
  std::vector<double> n_true(kc, 0.0), n_hat(kc, 0.0);
  Matrix overlap = Matrix::Zero(k_c, k_c);
  for (Index i = 0; i < partition_true.size(); ++i) {
    overlap(partition_true[i], partition_hat[i]) += 1.0;
    n_true[static_cast<std::size_t>(partition_true[i])] += 1.0;
    n_hat[static_cast<std::size_t>(partition_hat[i])] += 1.0;
  }
  for (std::size_t k = 0; k < kc; ++k) {
    if (n_true[k] == 0.0) {
      throw ParameterError("f_c: true community " + std::to_string(k + 1) +
                           " is empty; the criterion is undefined");
    }
  }
  Matrix ratio(k_c, k_c);
  for (Index k = 0; k < k_c; ++k) {
    for (Index j = 0; j < k_c; ++j) {
      ratio(k, j) = (n_true[static_cast<std::size_t>(k)] +
                     n_hat[static_cast<std::size_t>(j)] - 2.0 * overlap(k, j)) /
                    n_true[static_cast<std::size_t>(k)];
    }
  }

  // Depth-first over permutations in lexicographic order; only strict
  // improvements replace the incumbent, so ties keep the first permutation.
  double best = kInf;
  Permutation best_perm, current(kc);
  std::vector<bool> used(kc, false);
  auto search = [&](auto&& self, std::size_t k, double running) -> void {
    if (running >= best) return;
    if (k == kc) {
      best = running;
      best_perm = current;
      return;
    }
    for (std::size_t j = 0; j < kc; ++j) {
      if (used[j]) continue;
      used[j] = true;
      current[k] = static_cast<int>(j);
      self(self, k + 1,
           std::max(running, ratio(static_cast<Index>(k), static_cast<Index>(j))));
      used[j] = false;
    }
  };
  search(search, 0, 0.0);
  return {best, best_perm};
}

ErrorReport evaluate(const RowMembership& pi_hat, const RowMembership& pi_true,
                     const ColumnLabels& labels_hat,
                     const ColumnLabels& labels_true, int k_c) {
  ErrorReport r;
  std::tie(r.mhamm, r.best_row_perm) = mhamm(pi_hat, pi_true);
  std::tie(r.hamm, r.best_col_perm) = hamm(labels_hat, labels_true, k_c);
  std::tie(r.f_c, r.best_f_c_perm) = f_c_error(labels_hat, labels_true, k_c);
  return r;
}

}  // namespace dinet
