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

#include <utility>
#include <vector>

#include "dinet/model.hpp"

namespace dinet {

/// perm[k] is the estimated community matched to true community k.
using Permutation = std::vector<int>;

/// Two assignment costs closer than this (relative to max(1, |cost|)) are
/// treated as tied; ties go to the lexicographically smallest permutation.
inline constexpr double kAssignmentTieTolerance = 1e-10;

struct Assignment {
  Permutation perm;
  /// sum_k cost(k, perm[k]), accumulated in k order.
  double cost = 0.0;
};

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method),
/// lexicographically smallest among optimal permutations.
Assignment min_cost_assignment(const Matrix& cost);

/// Mixed-Hamming error: min over column permutations of the entrywise L1
/// distance between the membership matrices, divided by n_r.
std::pair<double, Permutation> mhamm(const RowMembership& pi_hat,
                                     const RowMembership& pi_true);

/// Hamming error: min over label permutations of the one-hot L1 distance,
/// divided by n_c. Equals twice the misclassified fraction.
std::pair<double, Permutation> hamm(const ColumnLabels& labels_hat,
                                    const ColumnLabels& labels_true, int k_c);

inline constexpr int kMaxFcCommunities = 10;

/// Min over permutations of the max over true communities k of
/// |T_k \ T_hat_pi(k)| + |T_hat_pi(k) \ T_k|, divided by |T_k|. Exhaustive
/// search, so K_c is capped at kMaxFcCommunities.
std::pair<double, Permutation> f_c_error(const ColumnLabels& partition_hat,
                                         const ColumnLabels& partition_true,
                                         int k_c);

struct ErrorReport {
  double mhamm = 0.0;
  double hamm = 0.0;
  double f_c = 0.0;
  Permutation best_row_perm;
  Permutation best_col_perm;
  Permutation best_f_c_perm;
};

ErrorReport evaluate(const RowMembership& pi_hat, const RowMembership& pi_true,
                     const ColumnLabels& labels_hat,
                     const ColumnLabels& labels_true, int k_c);

}  // namespace dinet
