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

// Generative models for directed networks whose row nodes carry overlapping
// (mixed) memberships and whose column nodes carry a single label:
//
//   ONM    Omega = Pi_r P Pi_c'
//   ODCNM  Omega = Pi_r P Pi_c' Theta_c      (column degree heterogeneity)
//   DCONM  Omega = Theta_r Pi_r P Pi_c'      (row degree heterogeneity)
//
// with A(i, j) ~ Bernoulli(Omega(i, j)) independently.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dinet {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, Index>;

inline constexpr double kMembershipTolerance = 1e-12;

/// n_r x K_r row-stochastic membership matrix.
class RowMembership {
 public:
  /// Throws ParameterError if an entry is negative or a row does not sum to 1
  /// within 1e-12.
  explicit RowMembership(Matrix memberships);

  const Matrix& matrix() const noexcept { return m_; }
  Index rows() const noexcept { return m_.rows(); }
  Index communities() const noexcept { return m_.cols(); }

  /// Community index if row i is a standard basis vector within 1e-12.
  std::optional<Index> pure_community(Index i) const;

 private:
  Matrix m_;
};

/// Column community labels. Stored 0-based in [0, K_c); files and the CLI use
/// 1-based labels.
class ColumnLabels {
 public:
  ColumnLabels(std::vector<int> labels, int communities);

  static ColumnLabels from_one_based(std::span<const int> labels,
                                     int communities);

  const std::vector<int>& labels() const noexcept { return labels_; }
  int operator[](Index i) const { return labels_[static_cast<std::size_t>(i)]; }
  Index size() const noexcept { return static_cast<Index>(labels_.size()); }
  int communities() const noexcept { return k_; }

  std::vector<Index> community_sizes() const;
  bool all_communities_nonempty() const;
  /// n_c x K_c one-hot matrix Pi_c.
  Matrix one_hot() const;

  friend bool operator==(const ColumnLabels&, const ColumnLabels&) = default;

 private:
  std::vector<int> labels_;
  int k_;
};

/// P = rho * P_tilde, where P_tilde has entries in [0, 1] and maximum 1.
class ConnectivityMatrix {
 public:
  ConnectivityMatrix(Matrix p_tilde, double rho);

  const Matrix& p_tilde() const noexcept { return p_tilde_; }
  double rho() const noexcept { return rho_; }
  Matrix p() const { return rho_ * p_tilde_; }
  Index row_communities() const noexcept { return p_tilde_.rows(); }
  Index column_communities() const noexcept { return p_tilde_.cols(); }

 private:
  Matrix p_tilde_;
  double rho_;
};

enum class DegreeRole { kRow, kColumn };

/// Strictly positive degree heterogeneity parameters (Theta_r or Theta_c).
class DegreeVector {
 public:
  DegreeVector(Vector theta, DegreeRole role);

  const Vector& theta() const noexcept { return theta_; }
  DegreeRole role() const noexcept { return role_; }
  Index size() const noexcept { return theta_.size(); }

 private:
  Vector theta_;
  DegreeRole role_;
};

enum class ModelKind { kOnm, kOdcnm, kDconm };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

/// Expected adjacency matrix Omega; entries in [0, 1].
class PopulationMatrix {
 public:
  PopulationMatrix(Matrix omega, ModelKind kind);

  const Matrix& omega() const noexcept { return omega_; }
  ModelKind kind() const noexcept { return kind_; }
  Index rows() const noexcept { return omega_.rows(); }
  Index cols() const noexcept { return omega_.cols(); }

 private:
  Matrix omega_;
  ModelKind kind_;
};

/// Binary n_r x n_c bi-adjacency matrix as a sorted (row, col) edge list.
class BiAdjacency {
 public:
  using Edge = std::pair<Index, Index>;

  BiAdjacency(Index rows, Index cols, std::vector<Edge> edges);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  /// Edges in row-major order, 0-based, without duplicates.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  SparseMatrix to_sparse() const;
  Matrix to_dense() const;

  friend bool operator==(const BiAdjacency&, const BiAdjacency&) = default;

 private:
  Index rows_;
  Index cols_;
  std::vector<Edge> edges_;
};

struct ConditionCheck {
  std::string condition;    // "(I1)", "(I2)", "(II1)", ...
  std::string description;  // e.g. "rank(P) = K_r"
  bool passed;
};

struct ValidationReport {
  std::vector<ConditionCheck> checks;

  bool ok() const;
  /// First failing check, or nullptr.
  const ConditionCheck* first_failure() const;
  /// Throws IdentifiabilityError naming the first failing condition.
  void require() const;
};

/// Checks (I1) and (I2). Dimension mismatches (including K_r > K_c) throw
/// DimensionError instead of producing a failing report.
ValidationReport validate_onm_params(const RowMembership& pi_r,
                                     const ColumnLabels& labels,
                                     const ConnectivityMatrix& p);

/// Checks (II1) (the (I1) ranks plus P(k,k) = 1) and (II2).
ValidationReport validate_dconm_params(const RowMembership& pi_r,
                                       const ColumnLabels& labels,
                                       const ConnectivityMatrix& p);

/// Builds Omega for ONM (no degrees), ODCNM (theta_c) or DCONM (theta_r).
/// Throws ParameterError if any entry of Omega leaves [0, 1] and
/// IdentifiabilityError("(II1)") for DCONM with P(k,k) != 1.
PopulationMatrix build_omega(const RowMembership& pi_r,
                             const ColumnLabels& labels,
                             const ConnectivityMatrix& p,
                             const std::optional<DegreeVector>& theta_c = {},
                             const std::optional<DegreeVector>& theta_r = {});

/// Independent Bernoulli(Omega(i,j)) draws; identical seeds give identical
/// matrices.
BiAdjacency sample_adjacency(const PopulationMatrix& omega, std::uint64_t seed);

/// theta(i) = 1/u with u ~ U[1, z]; throws ParameterError for z < 1.
DegreeVector sample_degrees(Index n, double z, DegreeRole role,
                            std::uint64_t seed);

inline DegreeVector sample_column_degrees(Index n_c, double z_c,
                                          std::uint64_t seed) {
  return sample_degrees(n_c, z_c, DegreeRole::kColumn, seed);
}

/// `pure_per_community` pure rows for each community (in community order)
/// followed by `n_mixed` rows all equal to `mixing`.
RowMembership make_row_membership(Index pure_per_community, Index n_mixed,
                                  const Vector& mixing);

/// Labels drawn uniformly from the K_c communities. If some community ends up
/// empty the draw is repeated; `resamples` (optional) counts the repeats.
ColumnLabels sample_uniform_labels(Index n_c, int communities,
                                   std::uint64_t seed,
                                   int* resamples = nullptr);

}  // namespace dinet
