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

#include "dinet/model.hpp"

#include <cstdint>
#include <vector>

namespace dinet {

/// Rank-K truncated SVD M ~ U_r diag(lambda) U_c'.
///
/// Invariants: U_r'U_r = U_c'U_c = I_K, lambda descending, and in every column
/// of U_r the entry of largest magnitude (first one on ties) is positive.
struct SpectralTriple {
  Matrix u_r;
  Vector lambda;
  Matrix u_c;
};

struct SvdOptions {
  /// Problems with min(n_r, n_c) <= dense_limit use a full dense SVD.
  Index dense_limit = 512;
  /// Lanczos convergence: residual of every wanted triple <= tol * sigma_1.
  double tol = 1e-10;
  /// Maximum number of Lanczos restarts.
  int max_iters = 1000;
};

SpectralTriple top_k_svd(const Matrix& m, Index k, const SvdOptions& opts = {});
SpectralTriple top_k_svd(const SparseMatrix& m, Index k,
                         const SvdOptions& opts = {});

struct RowNormalized {
  Matrix rows;
  /// Rows with Euclidean norm below 1e-12, left unchanged.
  std::vector<Index> zero_rows;
};

RowNormalized row_normalize(const Matrix& u);

/// Number of singular values above rel_tol * sigma_1.
Index numerical_rank(const Matrix& m, double rel_tol = 1e-10);

}  // namespace dinet
