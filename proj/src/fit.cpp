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

#include "dinet/fit.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dinet/errors.hpp"

namespace dinet {

std::string to_string(Method m) {
  return m == Method::kOna ? "ona" : "odcna";
}

Method parse_method(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "ona") return Method::kOna;
  if (lower == "odcna") return Method::kOdcna;
  throw ParameterError("unknown method '" + name + "' (expected ona or odcna)");
}

namespace {

Index nearest_row(const Matrix& points, const Eigen::RowVectorXd& x) {
  Index best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Index c = 0; c < points.rows(); ++c) {
    const double d = (points.row(c) - x).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

void check_community_counts(Index n_r, Index n_c, Index k_r, Index k_c) {
  if (k_r < 1) throw ParameterError("K_r must be >= 1");
  if (k_r > k_c) {
    throw ParameterError("K_r ≤ K_c is required for identifiability (got K_r = " +
                         std::to_string(k_r) + ", K_c = " +
                         std::to_string(k_c) + ")");
  }
  if (k_c > n_c) {
    throw ParameterError("K_c = " + std::to_string(k_c) + " exceeds n_c = " +
                         std::to_string(n_c));
  }
  if (k_r > n_r) {
    throw ParameterError("K_r = " + std::to_string(k_r) + " exceeds n_r = " +
                         std::to_string(n_r));
  }
}

double min_center_distance(const Matrix& centers) {
  double best = std::numeric_limits<double>::infinity();
  for (Index a = 0; a < centers.rows(); ++a) {
    for (Index b = a + 1; b < centers.rows(); ++b) {
      best = std::min(best, (centers.row(a) - centers.row(b)).norm());
    }
  }
  return best;
}

}  // namespace

MembershipRecovery recover_memberships(const Matrix& u_r,
                                       const CornerSet& corners,
                                       double max_condition) {
  const Matrix& b = corners.corner_matrix;
  if (b.cols() != u_r.cols()) {
    throw DimensionError("corner matrix has " + std::to_string(b.cols()) +
                         " columns, U_r has " + std::to_string(u_r.cols()));
  }
  const Matrix gram = b * b.transpose();
  Eigen::JacobiSVD<Matrix> svd(gram);
  const Vector& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0) || s(0) / smin > max_condition) {
    std::ostringstream os;
    os << "corner matrix B_r B_r' is singular or ill-conditioned (condition "
          "number "
       << (smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity())
       << " > " << max_condition << "); K_r may be misspecified";
    throw DegenerateCornerError(os.str());
  }

  // Y' = (B B')^{-1} B U_r'
  Matrix y = gram.partialPivLu().solve(b * u_r.transpose()).transpose();

  MembershipRecovery out{RowMembership(Matrix::Identity(1, 1)), 0, {}};
  for (Index i = 0; i < y.rows(); ++i) {
    for (Index k = 0; k < y.cols(); ++k) {
      if (y(i, k) < 0.0) {
        y(i, k) = 0.0;
        ++out.clipped_count;
      }
    }
    const double l1 = y.row(i).sum();
    if (l1 > 0.0) {
      y.row(i) /= l1;
    } else {
      out.zero_rows.push_back(i);
      y.row(i).setZero();
      y(i, nearest_row(b, u_r.row(i))) = 1.0;
    }
  }
  out.memberships = RowMembership(std::move(y));
  return out;
}

FitResult fit_spectral(SpectralTriple spectral, Method method, Index k_r,
                       Index k_c, std::uint64_t seed, const FitOptions& opts) {
  const Index n_r = spectral.u_r.rows();
  const Index n_c = spectral.u_c.rows();
  check_community_counts(n_r, n_c, k_r, k_c);
  if (spectral.u_r.cols() != k_r || spectral.u_c.cols() != k_r) {
    throw DimensionError("spectral triple rank does not match K_r");
  }

  CornerSet corners = successive_projection(spectral.u_r, k_r);
  MembershipRecovery rows =
      recover_memberships(spectral.u_r, corners, opts.max_condition);

  DiagnosticBundle diag;
  diag.sigma = spectral.lambda;
  diag.clipped_count = rows.clipped_count;
  diag.zero_membership_rows = std::move(rows.zero_rows);

  std::vector<int> labels;
  if (method == Method::kOna) {
    KMeansResult km = kmeans_rows(spectral.u_c, k_c, seed, opts.kmeans);
    labels = km.labels.labels();
    diag.delta_c_hat = min_center_distance(km.centers);
    diag.kmeans_cost = km.cost;
    diag.kmeans_restarts = km.restarts_used;
  } else {
    RowNormalized normalized = row_normalize(spectral.u_c);
    const auto& zero = normalized.zero_rows;
    if (zero.empty()) {
      KMeansResult km = kmeans_rows(normalized.rows, k_c, seed, opts.kmeans);
      labels = km.labels.labels();
      diag.delta_c_hat = min_center_distance(km.centers);
      diag.kmeans_cost = km.cost;
      diag.kmeans_restarts = km.restarts_used;
    } else {
      // Cluster the rows that can be normalized, then give every zero row the
      // label of the nearest cluster mean of the unnormalized embedding.
      std::vector<Index> keep;
      keep.reserve(static_cast<std::size_t>(n_c));
      for (Index i = 0, z = 0; i < n_c; ++i) {
        if (z < static_cast<Index>(zero.size()) && zero[static_cast<std::size_t>(z)] == i) {
          ++z;
        } else {
          keep.push_back(i);
        }
      }
      if (static_cast<Index>(keep.size()) < k_c) {
        throw NumericalError("only " + std::to_string(keep.size()) +
                             " column nodes have a non-zero embedding; cannot "
                             "form K_c = " + std::to_string(k_c) + " clusters");
      }
      Matrix sub(static_cast<Index>(keep.size()), k_r);
      for (std::size_t t = 0; t < keep.size(); ++t) {
        sub.row(static_cast<Index>(t)) = normalized.rows.row(keep[t]);
      }
      KMeansResult km = kmeans_rows(sub, k_c, seed, opts.kmeans);
      diag.delta_c_hat = min_center_distance(km.centers);
      diag.kmeans_cost = km.cost;
      diag.kmeans_restarts = km.restarts_used;

      labels.assign(static_cast<std::size_t>(n_c), 0);
      Matrix raw_means = Matrix::Zero(k_c, k_r);
      std::vector<Index> counts(static_cast<std::size_t>(k_c), 0);
      for (std::size_t t = 0; t < keep.size(); ++t) {
        const int l = km.labels[static_cast<Index>(t)];
        labels[static_cast<std::size_t>(keep[t])] = l;
        raw_means.row(l) += spectral.u_c.row(keep[t]);
        ++counts[static_cast<std::size_t>(l)];
      }
      for (Index c = 0; c < k_c; ++c) {
        raw_means.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
      for (Index i : zero) {
        labels[static_cast<std::size_t>(i)] =
            static_cast<int>(nearest_row(raw_means, spectral.u_c.row(i)));
      }
      diag.zero_column_rows = zero;
    }
  }

  return FitResult{std::move(rows.memberships),
                   ColumnLabels(std::move(labels), static_cast<int>(k_c)),
                   std::move(corners), std::move(spectral), std::move(diag)};
}

FitResult fit(const BiAdjacency& a, Method method, Index k_r, Index k_c,
              std::uint64_t seed, const FitOptions& opts) {
  check_community_counts(a.rows(), a.cols(), k_r, k_c);
  return fit_spectral(top_k_svd(a.to_sparse(), k_r, opts.svd), method, k_r,
                      k_c, seed, opts);
}

FitResult fit(const PopulationMatrix& omega, Method method, Index k_r,
              Index k_c, std::uint64_t seed, const FitOptions& opts) {
  check_community_counts(omega.rows(), omega.cols(), k_r, k_c);
  return fit_spectral(top_k_svd(omega.omega(), k_r, opts.svd), method, k_r,
                      k_c, seed, opts);
}

}  // namespace dinet
