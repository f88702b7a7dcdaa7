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

#include <vector>

#include "dinet/model.hpp"

namespace dinet {

/// Rows of the input picked as simplex corners, in selection order.
struct CornerSet {
  std::vector<Index> indices;
  Matrix corner_matrix;
  /// Residual norm of each selected row at the step it was picked.
  std::vector<double> selected_norms;
};

/// Successive projection: repeatedly take the row with the largest residual
/// Euclidean norm (lowest index on ties) and project every residual row onto
/// the orthogonal complement of it.
///
/// Throws ParameterError unless 1 <= r <= min(rows, cols), and
/// RankDeficiencyError if every residual row norm drops below 1e-12 before r
/// corners are found.
CornerSet successive_projection(const Matrix& y, Index r);

}  // namespace dinet
