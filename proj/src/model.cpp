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

#include "dinet/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dinet/errors.hpp"
#include "dinet/linalg.hpp"
#include "dinet/random.hpp"

namespace dinet {

namespace {

std::string shape(Index r, Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

// Omega entries may overshoot [0, 1] by rounding in the products.
constexpr double kOmegaSlack = 1e-12;

}  // namespace

RowMembership::RowMembership(Matrix memberships) : m_(std::move(memberships)) {
  if (m_.cols() < 1) throw DimensionError("row membership needs K_r >= 1");
  for (Index i = 0; i < m_.rows(); ++i) {
    double sum = 0.0;
    for (Index k = 0; k < m_.cols(); ++k) {
      const double v = m_(i, k);
      if (!std::isfinite(v) || v < 0.0) {
        throw ParameterError("row membership entry (" + std::to_string(i) +
                             ", " + std::to_string(k) +
                             ") is negative or not finite");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kMembershipTolerance) {
      throw ParameterError("row membership row " + std::to_string(i) +
                           " sums to " + std::to_string(sum) + ", not 1");
    }
  }
}

std::optional<Index> RowMembership::pure_community(Index i) const {
  Index arg = 0;
  m_.row(i).maxCoeff(&arg);
  for (Index k = 0; k < m_.cols(); ++k) {
    const double target = (k == arg) ? 1.0 : 0.0;
    if (std::abs(m_(i, k) - target) > kMembershipTolerance) return std::nullopt;
  }
  return arg;
}

ColumnLabels::ColumnLabels(std::vector<int> labels, int communities)
    : labels_(std::move(labels)), k_(communities) {
  if (k_ < 1) throw DimensionError("column labels need K_c >= 1");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0 || labels_[i] >= k_) {
      throw ParameterError("column label " + std::to_string(labels_[i] + 1) +
                           " at node " + std::to_string(i + 1) +
                           " outside [1, " + std::to_string(k_) + "]");
    }
  }
}

ColumnLabels ColumnLabels::from_one_based(std::span<const int> labels,
                                          int communities) {
  std::vector<int> zero_based(labels.begin(), labels.end());
  for (int& l : zero_based) --l;
  return ColumnLabels(std::move(zero_based), communities);
}

std::vector<Index> ColumnLabels::community_sizes() const {
  std::vector<Index> sizes(static_cast<std::size_t>(k_), 0);
  for (int l : labels_) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

bool ColumnLabels::all_communities_nonempty() const {
  const auto sizes = community_sizes();
  return std::all_of(sizes.begin(), sizes.end(),
                     [](Index s) { return s > 0; });
}

Matrix ColumnLabels::one_hot() const {
  Matrix pi = Matrix::Zero(size(), k_);
  for (Index i = 0; i < size(); ++i) pi(i, (*this)[i]) = 1.0;
  return pi;
}

ConnectivityMatrix::ConnectivityMatrix(Matrix p_tilde, double rho)
    : p_tilde_(std::move(p_tilde)), rho_(rho) {
  if (p_tilde_.size() == 0) throw DimensionError("empty connectivity matrix");
  if (!(rho_ > 0.0 && rho_ <= 1.0)) {
    throw ParameterError("sparsity rho must lie in (0, 1], got " +
                         std::to_string(rho_));
  }
  for (Index k = 0; k < p_tilde_.rows(); ++k) {
    for (Index l = 0; l < p_tilde_.cols(); ++l) {
      const double v = p_tilde_(k, l);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ParameterError("P_tilde entries must lie in [0, 1]");
      }
    }
  }
  if (std::abs(p_tilde_.maxCoeff() - 1.0) > 1e-12) {
    throw ParameterError("max entry of P_tilde must be 1");
  }
}

DegreeVector::DegreeVector(Vector theta, DegreeRole role)
    : theta_(std::move(theta)), role_(role) {
  for (Index i = 0; i < theta_.size(); ++i) {
    if (!(theta_(i) > 0.0) || !std::isfinite(theta_(i))) {
      throw ParameterError("degree parameters must be strictly positive");
    }
  }
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kOnm:
      return "onm";
    case ModelKind::kOdcnm:
      return "odcnm";
    case ModelKind::kDconm:
      return "dconm";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "onm") return ModelKind::kOnm;
  if (lower == "odcnm") return ModelKind::kOdcnm;
  if (lower == "dconm") return ModelKind::kDconm;
  throw ParameterError("unknown model '" + name +
                       "' (expected onm, odcnm or dconm)");
}

PopulationMatrix::PopulationMatrix(Matrix omega, ModelKind kind)
    : omega_(std::move(omega)), kind_(kind) {
  if (omega_.size() > 0 &&
      (!(omega_.minCoeff() >= 0.0) || !(omega_.maxCoeff() <= 1.0))) {
    throw ParameterError("population matrix entries must lie in [0, 1]");
  }
}

BiAdjacency::BiAdjacency(Index rows, Index cols, std::vector<Edge> edges)
    : rows_(rows), cols_(cols), edges_(std::move(edges)) {
  if (rows_ < 0 || cols_ < 0) throw DimensionError("negative matrix size");
  for (const auto& [r, c] : edges_) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
      throw DimensionError("edge (" + std::to_string(r + 1) + ", " +
                           std::to_string(c + 1) + ") outside " +
                           shape(rows_, cols_) + " matrix");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

SparseMatrix BiAdjacency::to_sparse() const {
  std::vector<Eigen::Triplet<double, Index>> triplets;
  triplets.reserve(edges_.size());
  for (const auto& [r, c] : edges_) triplets.emplace_back(r, c, 1.0);
  SparseMatrix a(rows_, cols_);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

Matrix BiAdjacency::to_dense() const {
  Matrix a = Matrix::Zero(rows_, cols_);
  for (const auto& [r, c] : edges_) a(r, c) = 1.0;
  return a;
}

bool ValidationReport::ok() const { return first_failure() == nullptr; }

const ConditionCheck* ValidationReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

void ValidationReport::require() const {
  if (const auto* f = first_failure()) {
    throw IdentifiabilityError(f->condition, f->description);
  }
}

namespace {

void check_dimensions(const RowMembership& pi_r, const ColumnLabels& labels,
                      const ConnectivityMatrix& p) {
  const Index k_r = p.row_communities();
  const Index k_c = p.column_communities();
  if (k_r > k_c) {
    throw DimensionError("K_r <= K_c is required, got K_r = " +
                         std::to_string(k_r) + ", K_c = " +
                         std::to_string(k_c));
  }
  if (pi_r.communities() != k_r) {
    throw DimensionError("Pi_r has " + std::to_string(pi_r.communities()) +
                         " columns but P is " + shape(k_r, k_c));
  }
  if (labels.communities() != k_c) {
    throw DimensionError("column labels use K_c = " +
                         std::to_string(labels.communities()) +
                         " but P is " + shape(k_r, k_c));
  }
}

std::vector<ConditionCheck> rank_and_purity_checks(const RowMembership& pi_r,
                                                   const ColumnLabels& labels,
                                                   const ConnectivityMatrix& p,
                                                   const std::string& rank_tag,
                                                   const std::string& pure_tag) {
  const Index k_r = p.row_communities();
  std::vector<ConditionCheck> checks;
  checks.push_back(
      {rank_tag, "rank(P) = K_r", numerical_rank(p.p()) == k_r});
  checks.push_back({rank_tag, "rank(Pi_r) = K_r",
                    numerical_rank(pi_r.matrix()) == k_r});
  checks.push_back({rank_tag, "rank(Pi_c) = K_c (every column community "
                              "non-empty)",
                    labels.all_communities_nonempty()});

  std::vector<bool> has_pure(static_cast<std::size_t>(k_r), false);
  for (Index i = 0; i < pi_r.rows(); ++i) {
    if (auto k = pi_r.pure_community(i)) {
      has_pure[static_cast<std::size_t>(*k)] = true;
    }
  }
  const bool all_pure = std::all_of(has_pure.begin(), has_pure.end(),
                                    [](bool b) { return b; });
  checks.push_back({pure_tag, "at least one pure row node per row community",
                    all_pure});
  return checks;
}

}  // namespace

ValidationReport validate_onm_params(const RowMembership& pi_r,
                                     const ColumnLabels& labels,
                                     const ConnectivityMatrix& p) {
  check_dimensions(pi_r, labels, p);
  return {rank_and_purity_checks(pi_r, labels, p, "(I1)", "(I2)")};
}

ValidationReport validate_dconm_params(const RowMembership& pi_r,
                                       const ColumnLabels& labels,
                                       const ConnectivityMatrix& p) {
  check_dimensions(pi_r, labels, p);
  auto checks = rank_and_purity_checks(pi_r, labels, p, "(II1)", "(II2)");
  const Matrix pm = p.p();
  bool unit_diagonal = true;
  for (Index k = 0; k < pm.rows(); ++k) {
    unit_diagonal = unit_diagonal && std::abs(pm(k, k) - 1.0) <= 1e-12;
  }
  checks.insert(checks.begin() + 3,
                {"(II1)", "P(k,k) = 1 for k in [K_r]", unit_diagonal});
  return {std::move(checks)};
}

PopulationMatrix build_omega(const RowMembership& pi_r,
                             const ColumnLabels& labels,
                             const ConnectivityMatrix& p,
                             const std::optional<DegreeVector>& theta_c,
                             const std::optional<DegreeVector>& theta_r) {
  check_dimensions(pi_r, labels, p);
  if (theta_c && theta_r) {
    throw ParameterError(
        "at most one of theta_c (ODCNM) and theta_r (DCONM) may be given");
  }
  const Matrix pm = p.p();
  ModelKind kind = ModelKind::kOnm;
  if (theta_c) {
    kind = ModelKind::kOdcnm;
    if (theta_c->size() != labels.size()) {
      throw DimensionError("theta_c has length " +
                           std::to_string(theta_c->size()) + ", expected n_c = " +
                           std::to_string(labels.size()));
    }
  }
  if (theta_r) {
    kind = ModelKind::kDconm;
    if (theta_r->size() != pi_r.rows()) {
      throw DimensionError("theta_r has length " +
                           std::to_string(theta_r->size()) + ", expected n_r = " +
                           std::to_string(pi_r.rows()));
    }
    for (Index k = 0; k < pm.rows(); ++k) {
      if (std::abs(pm(k, k) - 1.0) > 1e-12) {
        throw IdentifiabilityError(
            "(II1)", "P(k,k) = 1 for k in [K_r] (P(" + std::to_string(k + 1) +
                         "," + std::to_string(k + 1) + ") = " +
                         std::to_string(pm(k, k)) + ")");
      }
    }
  }

  // Pi_c' has a single 1 per column, so column j of Pi_r P Pi_c' is column
  // l(j) of Pi_r P, bit for bit.
  const Matrix row_profiles = pi_r.matrix() * pm;
  Matrix omega(pi_r.rows(), labels.size());
  for (Index j = 0; j < labels.size(); ++j) {
    omega.col(j) = row_profiles.col(labels[j]);
    if (theta_c) omega.col(j) *= theta_c->theta()(j);
  }
  if (theta_r) omega = theta_r->theta().asDiagonal() * omega;

  if (omega.size() > 0) {
    if (omega.minCoeff() < -kOmegaSlack || omega.maxCoeff() > 1.0 + kOmegaSlack) {
      throw ParameterError(
          "Omega has entries outside [0, 1] (range [" +
          std::to_string(omega.minCoeff()) + ", " +
          std::to_string(omega.maxCoeff()) + "]); reduce rho or theta");
    }
    omega = omega.cwiseMax(0.0).cwiseMin(1.0);
  }
  return PopulationMatrix(std::move(omega), kind);
}

BiAdjacency sample_adjacency(const PopulationMatrix& omega,
                             std::uint64_t seed) {
  Rng rng(seed);
  const Matrix& w = omega.omega();
  std::vector<BiAdjacency::Edge> edges;
  for (Index i = 0; i < w.rows(); ++i) {
    for (Index j = 0; j < w.cols(); ++j) {
      if (uniform01(rng) < w(i, j)) edges.emplace_back(i, j);
    }
  }
  return BiAdjacency(w.rows(), w.cols(), std::move(edges));
}

DegreeVector sample_degrees(Index n, double z, DegreeRole role,
                            std::uint64_t seed) {
  if (!(z >= 1.0) || !std::isfinite(z)) {
    throw ParameterError("degree spread z must be >= 1, got " +
                         std::to_string(z));
  }
  Rng rng(seed);
  Vector theta(n);
  for (Index i = 0; i < n; ++i) {
    const double u = 1.0 + (z - 1.0) * uniform01(rng);
    theta(i) = 1.0 / u;
  }
  return DegreeVector(std::move(theta), role);
}

RowMembership make_row_membership(Index pure_per_community, Index n_mixed,
                                  const Vector& mixing) {
  const Index k = mixing.size();
  if (k < 1) throw DimensionError("mixing vector is empty");
  if (pure_per_community < 0 || n_mixed < 0) {
    throw ParameterError("node counts must be non-negative");
  }
  Matrix pi = Matrix::Zero(pure_per_community * k + n_mixed, k);
  for (Index c = 0; c < k; ++c) {
    pi.block(c * pure_per_community, c, pure_per_community, 1).setOnes();
  }
  for (Index i = 0; i < n_mixed; ++i) {
    pi.row(pure_per_community * k + i) = mixing.transpose();
  }
  return RowMembership(std::move(pi));
}

ColumnLabels sample_uniform_labels(Index n_c, int communities,
                                   std::uint64_t seed, int* resamples) {
  if (communities < 1) throw ParameterError("K_c must be >= 1");
  if (n_c < communities) {
    throw ParameterError("n_c = " + std::to_string(n_c) +
                         " cannot fill K_c = " + std::to_string(communities) +
                         " non-empty communities");
  }
  Rng rng(seed);
  int repeats = 0;
  for (;;) {
    std::vector<int> labels(static_cast<std::size_t>(n_c));
    for (auto& l : labels) {
      l = static_cast<int>(
          uniform_index(rng, static_cast<std::uint64_t>(communities)));
    }
    ColumnLabels result(std::move(labels), communities);
    if (result.all_communities_nonempty()) {
      if (resamples) *resamples = repeats;
      return result;
    }
    ++repeats;
  }
}

}  // namespace dinet
