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

// Spectral estimators for overlapping row / non-overlapping column
// communities. Both run a rank-K_r SVD, hunt the K_r simplex corners among the
// rows of U_r with successive projection, and invert the simplex to get row
// memberships. Column labels come from k-means on U_c (ONA) or on its
// row-normalized version (ODCNA). Applied to a population matrix instead of an
// adjacency matrix, the same code is the "ideal" estimator.

#include <cstdint>
#include <string>
#include <vector>

#include "dinet/kmeans.hpp"
#include "dinet/linalg.hpp"
#include "dinet/model.hpp"
#include "dinet/sp.hpp"

namespace dinet {

enum class Method { kOna, kOdcna };

std::string to_string(Method m);
Method parse_method(const std::string& name);

struct DiagnosticBundle {
  /// The K_r retained singular values, descending.
  Vector sigma;
  /// Minimum pairwise distance among the k-means centers (infinity if K_c = 1).
  double delta_c_hat = 0.0;
  /// Negative entries of Y_r set to zero.
  int clipped_count = 0;
  /// Rows of Y_r that were all zero after clipping (assigned to the nearest
  /// corner).
  std::vector<Index> zero_membership_rows;
  /// Zero rows of U_c (ODCNA only) labelled after clustering.
  std::vector<Index> zero_column_rows;
  double kmeans_cost = 0.0;
  int kmeans_restarts = 0;
};

struct FitResult {
  RowMembership pi_r_hat;
  ColumnLabels labels_hat;
  CornerSet corners;
  SpectralTriple spectral;
  DiagnosticBundle diagnostics;
};

struct FitOptions {
  SvdOptions svd;
  KMeansOptions kmeans;
  /// Largest accepted condition number of B_r B_r'.
  double max_condition = 1e12;
};

struct MembershipRecovery {
  RowMembership memberships;
  int clipped_count = 0;
  std::vector<Index> zero_rows;
};

/// Y = U_r B' (B B')^{-1} with B the corner rows, negatives clipped to 0 and
/// rows scaled to unit L1 norm. A row that is entirely zero after clipping
/// becomes the one-hot vector of its nearest corner (Euclidean, in U_r space).
/// Throws DegenerateCornerError when cond(B B') exceeds max_condition.
MembershipRecovery recover_memberships(const Matrix& u_r,
                                       const CornerSet& corners,
                                       double max_condition = 1e12);

/// Runs the estimator on an already computed spectral triple.
FitResult fit_spectral(SpectralTriple spectral, Method method, Index k_r,
                       Index k_c, std::uint64_t seed,
                       const FitOptions& opts = {});

FitResult fit(const BiAdjacency& a, Method method, Index k_r, Index k_c,
              std::uint64_t seed, const FitOptions& opts = {});
FitResult fit(const PopulationMatrix& omega, Method method, Index k_r,
              Index k_c, std::uint64_t seed, const FitOptions& opts = {});

template <class Input>
FitResult fit_ona(const Input& input, Index k_r, Index k_c, std::uint64_t seed,
                  const FitOptions& opts = {}) {
  return fit(input, Method::kOna, k_r, k_c, seed, opts);
}

template <class Input>
FitResult fit_odcna(const Input& input, Index k_r, Index k_c,
                    std::uint64_t seed, const FitOptions& opts = {}) {
  return fit(input, Method::kOdcna, k_r, k_c, seed, opts);
}

}  // namespace dinet
