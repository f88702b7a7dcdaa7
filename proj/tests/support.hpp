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

// Shared generators and brute-force oracles for the test binaries.

#ifndef DINET_TESTS_SUPPORT_HPP_
#define DINET_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <numeric>
#include <string>
#include <functional>
#include <set>
#include <vector>

#include "dinet/model.hpp"
#include "dinet/random.hpp"

namespace dinet::testing {

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline Index uniform_int(Rng& rng, Index lo, Index hi) {
  return lo + static_cast<Index>(
                  uniform_index(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline Matrix random_matrix(Rng& rng, Index rows, Index cols, double lo = -1.0,
                            double hi = 1.0) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

// Row memberships with `pure` one-hot rows per community followed by mixed
// rows whose largest entry stays at most `max_weight`.
inline RowMembership random_memberships(Rng& rng, Index n_r, Index k,
                                        Index pure, double max_weight = 0.8) {
  Matrix pi = Matrix::Zero(n_r, k);
  for (Index i = 0; i < n_r; ++i) {
    if (i < pure * k || k == 1) {
      pi(i, i % k) = 1.0;
      continue;
    }
    for (;;) {
      for (Index c = 0; c < k; ++c) pi(i, c) = uniform(rng, 0.05, 1.0);
      pi.row(i) /= pi.row(i).sum();
      if (pi.row(i).maxCoeff() <= max_weight) break;
    }
  }
  return RowMembership(std::move(pi));
}

// Every community receives at least one column; the rest are uniform.
inline ColumnLabels random_labels(Rng& rng, Index n_c, int k) {
  std::vector<int> labels(static_cast<std::size_t>(n_c));
  for (Index j = 0; j < n_c; ++j) {
    labels[static_cast<std::size_t>(j)] =
        j < k ? static_cast<int>(j)
              : static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(k)));
  }
  for (std::size_t j = labels.size(); j > 1; --j) {
    std::swap(labels[j - 1], labels[uniform_index(rng, j)]);
  }
  return ColumnLabels(std::move(labels), k);
}

// Connectivity with rank K_r, entries in [0.05, 1], max entry 1.
inline ConnectivityMatrix random_connectivity(Rng& rng, Index k_r, Index k_c,
                                              double rho) {
  for (;;) {
    Matrix p = random_matrix(rng, k_r, k_c, 0.05, 1.0);
    Index arg_r = 0, arg_c = 0;
    p.maxCoeff(&arg_r, &arg_c);
    p(arg_r, arg_c) = 1.0;
    Eigen::JacobiSVD<Matrix> svd(p);
    const Vector s = svd.singularValues();
    if (s(k_r - 1) > 0.05 * s(0)) return ConnectivityMatrix(p, rho);
  }
}

struct OnmInstance {
  RowMembership pi_r;
  ColumnLabels labels;
  ConnectivityMatrix p;
};

inline OnmInstance random_onm(Rng& rng, Index n_r, Index n_c, Index k_r,
                              Index k_c) {
  RowMembership pi = random_memberships(rng, n_r, k_r, 2);
  ColumnLabels labels = random_labels(rng, n_c, static_cast<int>(k_c));
  ConnectivityMatrix p =
      random_connectivity(rng, k_r, k_c, uniform(rng, 0.2, 1.0));
  return {std::move(pi), std::move(labels), std::move(p)};
}

// Calls f on every permutation of {0, ..., k-1} in lexicographic order.
template <class F>
void for_each_permutation(int k, F&& f) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    f(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

// min over column permutations of the L1 distance, plus the lexicographically
// first minimizer. Column perm[k] of `estimate` is matched to column k.
inline std::pair<double, std::vector<int>> brute_force_l1(const Matrix& estimate,
                                                          const Matrix& truth) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> arg;
  for_each_permutation(static_cast<int>(truth.cols()), [&](const std::vector<int>& perm) {
    double total = 0.0;
    for (Index k = 0; k < truth.cols(); ++k) {
      total += (estimate.col(perm[static_cast<std::size_t>(k)]) - truth.col(k))
                   .cwiseAbs()
                   .sum();
    }
    if (total < best) {
      best = total;
      arg = perm;
    }
  });
  return {best, arg};
}

// Largest L1 row error after matching columns by `perm`.
inline double max_row_l1(const Matrix& estimate, const Matrix& truth,
                         const std::vector<int>& perm) {
  double worst = 0.0;
  for (Index i = 0; i < truth.rows(); ++i) {
    double row = 0.0;
    for (Index k = 0; k < truth.cols(); ++k) {
      row += std::abs(estimate(i, perm[static_cast<std::size_t>(k)]) - truth(i, k));
    }
    worst = std::max(worst, row);
  }
  return worst;
}

// Cyclic Jacobi rotations on a symmetric matrix; eigenvalues descending.
inline Vector jacobi_eigenvalues(Matrix a) {
  const Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Vector ev = a.diagonal();
  std::sort(ev.data(), ev.data() + n, std::greater<>());
  return ev;
}

inline Vector singular_values_oracle(const Matrix& m) {
  const Matrix gram = m.rows() >= m.cols() ? Matrix(m.transpose() * m)
                                           : Matrix(m * m.transpose());
  Vector ev = jacobi_eigenvalues(gram);
  for (Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
  return ev;
}

// Optimal within-cluster sum of squares over every partition of the rows into
// exactly k non-empty groups (restricted growth strings).
inline double exhaustive_optimum(const Matrix& x, int k) {
  const Index n = x.rows();
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  double best = std::numeric_limits<double>::infinity();
  auto cost_of = [&] {
    double total = 0.0;
    for (int c = 0; c < k; ++c) {
      Vector mean = Vector::Zero(x.cols());
      int count = 0;
      for (Index i = 0; i < n; ++i) {
        if (assign[static_cast<std::size_t>(i)] == c) {
          mean += x.row(i).transpose();
          ++count;
        }
      }
      mean /= count;
      for (Index i = 0; i < n; ++i) {
        if (assign[static_cast<std::size_t>(i)] == c) {
          total += (x.row(i).transpose() - mean).squaredNorm();
        }
      }
    }
    return total;
  };
  auto recurse = [&](auto&& self, Index i, int used) -> void {
    if (i == n) {
      if (used == k) best = std::min(best, cost_of());
      return;
    }
    if (k - used > n - i) return;
    for (int c = 0; c <= std::min(used, k - 1); ++c) {
      assign[static_cast<std::size_t>(i)] = c;
      self(self, i + 1, std::max(used, c + 1));
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

struct PlantedSimplex {
  Matrix vertices;
  Matrix points;
  std::vector<Index> vertex_rows;
};

inline PlantedSimplex planted_simplex(Rng& rng, Index r, Index n) {
  PlantedSimplex s;
  for (;;) {
    s.vertices = random_matrix(rng, r, r);
    if (Eigen::JacobiSVD<Matrix>(s.vertices).singularValues()(r - 1) > 0.1) break;
  }
  const RowMembership weights = random_memberships(rng, n, r, 0, 0.9);
  s.points = weights.matrix() * s.vertices;
  std::set<Index> slots;
  while (static_cast<Index>(slots.size()) < r) {
    slots.insert(uniform_int(rng, 0, n - 1));
  }
  Index v = 0;
  for (Index slot : slots) {
    s.points.row(slot) = s.vertices.row(v++);
    s.vertex_rows.push_back(slot);
  }
  return s;
}

// Fresh scratch directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dinet_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace dinet::testing

#endif  // DINET_TESTS_SUPPORT_HPP_
