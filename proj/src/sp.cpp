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

#include "dinet/sp.hpp"

#include <algorithm>
#include <string>

#include "dinet/errors.hpp"

namespace dinet {

namespace {

constexpr double kVanishedNorm = 1e-12;
constexpr Index kReorthogonalizeEvery = 8;

}  // namespace

CornerSet successive_projection(const Matrix& y, Index r) {
  if (r < 1 || r > std::min(y.rows(), y.cols())) {
    throw ParameterError("successive projection: r = " + std::to_string(r) +
                         " outside [1, min(" + std::to_string(y.rows()) +
                         ", " + std::to_string(y.cols()) + ")]");
  }
  Matrix residual = y;
  // Unit vectors of the directions projected out so far.
  Matrix directions(y.cols(), r);
  CornerSet out;

  for (Index step = 0; step < r; ++step) {
    Index best = 0;
    double best_sq = -1.0;
    for (Index i = 0; i < residual.rows(); ++i) {
      const double sq = residual.row(i).squaredNorm();
      if (sq > best_sq) {
        best_sq = sq;
        best = i;
      }
    }
    const double best_norm = std::sqrt(std::max(best_sq, 0.0));
    if (best_norm < kVanishedNorm) {
      throw RankDeficiencyError(static_cast<std::size_t>(step),
                                static_cast<std::size_t>(r));
    }
    out.indices.push_back(best);
    out.selected_norms.push_back(best_norm);

    const Vector u = residual.row(best).transpose() / best_norm;
    directions.col(step) = u;
    // R(i,:) <- R(i,:) - (R(i,:) u) u'
    const Vector coeffs = residual * u;
    residual.noalias() -= coeffs * u.transpose();

    if ((step + 1) % kReorthogonalizeEvery == 0) {
      for (Index d = 0; d <= step; ++d) {
        const Vector c = residual * directions.col(d);
        residual.noalias() -= c * directions.col(d).transpose();
      }
    }
  }

  out.corner_matrix.resize(r, y.cols());
  for (Index k = 0; k < r; ++k) out.corner_matrix.row(k) = y.row(out.indices[static_cast<std::size_t>(k)]);
  return out;
}

}  // namespace dinet
