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

#include "dinet/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dinet/errors.hpp"
#include "dinet/random.hpp"

namespace dinet {

namespace {

void check_rank_argument(Index rows, Index cols, Index k) {
  if (k < 1 || k > std::min(rows, cols)) {
    std::ostringstream os;
    os << "rank k = " << k << " outside [1, min(" << rows << ", " << cols
       << ")]";
    throw ParameterError(os.str());
  }
}

// Largest-magnitude entry of each U_r column made positive; U_c follows so
// that U_r diag(lambda) U_c' is unchanged.
void fix_signs(SpectralTriple& t) {
  for (Index j = 0; j < t.u_r.cols(); ++j) {
    Index arg = 0;
    t.u_r.col(j).cwiseAbs().maxCoeff(&arg);
    if (t.u_r(arg, j) < 0.0) {
      t.u_r.col(j) *= -1.0;
      t.u_c.col(j) *= -1.0;
    }
  }
}

SpectralTriple dense_svd(const Matrix& m, Index k) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SpectralTriple t{svd.matrixU().leftCols(k), svd.singularValues().head(k),
                   svd.matrixV().leftCols(k)};
  fix_signs(t);
  return t;
}

// Orthogonalizes v against the first `count` columns of basis (two passes of
// classical Gram-Schmidt).
void orthogonalize(Vector& v, const Matrix& basis, Index count) {
  if (count == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const Vector coeffs = basis.leftCols(count).transpose() * v;
    v.noalias() -= basis.leftCols(count) * coeffs;
  }
}

Vector random_orthogonal(Index n, const Matrix& basis, Index count, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = uniform01(rng) - 0.5;
    orthogonalize(v, basis, count);
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
  throw NumericalError("Lanczos: could not extend the Krylov basis");
}

// Thick-restart Golub-Kahan-Lanczos bidiagonalization with full
// reorthogonalization. Maintains A P = Q B and A' Q = P B' + f e_m'.
template <class Op>
SpectralTriple lanczos_svd(const Op& a, Index k, const SvdOptions& opts) {
  const Index n_r = a.rows();
  const Index n_c = a.cols();
  const Index m = std::min(std::min(n_r, n_c), std::max<Index>(k + 20, 2 * k));
  const double tiny = 1e-14;

  Rng rng(derive_seed(0, SeedPurpose::kLanczosStart));
  Matrix p(n_c, m), q(n_r, m), b = Matrix::Zero(m, m);
  p.col(0) = random_orthogonal(n_c, p, 0, rng);

  Index kept = 0;
  double last_residual = 0.0;
  for (int restart = 0; restart <= opts.max_iters; ++restart) {
    Vector f;
    double beta_m = 0.0;
    for (Index j = kept; j < m; ++j) {
      Vector qj = a * p.col(j);
      if (j > kept) qj.noalias() -= b(j - 1, j) * q.col(j - 1);
      orthogonalize(qj, q, j);
      double alpha = qj.norm();
      if (alpha < tiny) {
        qj = random_orthogonal(n_r, q, j, rng);
        alpha = 0.0;
      } else {
        qj /= alpha;
      }
      q.col(j) = qj;
      b(j, j) = alpha;

      Vector r = a.transpose() * q.col(j);
      r.noalias() -= alpha * p.col(j);
      orthogonalize(r, p, j + 1);
      const double beta = r.norm();
      if (j + 1 < m) {
        if (beta < tiny) {
          p.col(j + 1) = random_orthogonal(n_c, p, j + 1, rng);
          b(j, j + 1) = 0.0;
        } else {
          p.col(j + 1) = r / beta;
          b(j, j + 1) = beta;
        }
      } else {
        f = std::move(r);
        beta_m = beta;
      }
    }

    Eigen::JacobiSVD<Matrix> small(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector& s = small.singularValues();
    const Matrix& ub = small.matrixU();
    const Matrix& vb = small.matrixV();

    double worst = 0.0;
    for (Index i = 0; i < k; ++i) {
      worst = std::max(worst, beta_m * std::abs(ub(m - 1, i)));
    }
    last_residual = worst;
    const bool exhausted = (m == std::min(n_r, n_c)) && beta_m < 1e-8;
    if (worst <= opts.tol * std::max(s(0), tiny) || exhausted || m == k) {
      SpectralTriple t{q * ub.leftCols(k), s.head(k), p * vb.leftCols(k)};
      fix_signs(t);
      return t;
    }

    const Index kk = std::min<Index>(k + (m - k) / 2, m - 1);
    const Matrix q_new = q * ub.leftCols(kk);
    const Matrix p_new = p * vb.leftCols(kk);
    q.leftCols(kk) = q_new;
    p.leftCols(kk) = p_new;
    if (beta_m < tiny) {
      p.col(kk) = random_orthogonal(n_c, p, kk, rng);
    } else {
      Vector next = f / beta_m;
      orthogonalize(next, p, kk);
      p.col(kk) = next / next.norm();
    }
    b.setZero();
    for (Index i = 0; i < kk; ++i) {
      b(i, i) = s(i);
      b(i, kk) = beta_m * ub(m - 1, i);
    }
    kept = kk;
  }
  std::ostringstream os;
  os << "Lanczos bidiagonalization did not converge after " << opts.max_iters
     << " restarts (basis size " << m << ", worst residual " << last_residual
     << ", tolerance " << opts.tol << " x sigma_1)";
  throw NumericalError(os.str());
}

// The iteration needs n_c <= n_r: a full basis of the column space is then an
// exact factorization, so wide inputs are handled through their transpose.
template <class Mat>
SpectralTriple krylov_svd(const Mat& m, Index k, const SvdOptions& opts) {
  if (m.rows() >= m.cols()) return lanczos_svd(m, k, opts);
  const Mat transposed = m.transpose();
  SpectralTriple t = lanczos_svd(transposed, k, opts);
  std::swap(t.u_r, t.u_c);
  fix_signs(t);
  return t;
}

}  // namespace

SpectralTriple top_k_svd(const Matrix& m, Index k, const SvdOptions& opts) {
  check_rank_argument(m.rows(), m.cols(), k);
  if (std::min(m.rows(), m.cols()) <= opts.dense_limit) return dense_svd(m, k);
  return krylov_svd(m, k, opts);
}

SpectralTriple top_k_svd(const SparseMatrix& m, Index k,
                         const SvdOptions& opts) {
  check_rank_argument(m.rows(), m.cols(), k);
  if (std::min(m.rows(), m.cols()) <= opts.dense_limit) {
    return dense_svd(Matrix(m), k);
  }
  return krylov_svd(m, k, opts);
}

RowNormalized row_normalize(const Matrix& u) {
  RowNormalized out{u, {}};
  for (Index i = 0; i < u.rows(); ++i) {
    const double norm = u.row(i).norm();
    if (norm < 1e-12) {
      out.zero_rows.push_back(i);
    } else {
      out.rows.row(i) /= norm;
    }
  }
  return out;
}

Index numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  if (s(0) <= 0.0) return 0;
  return static_cast<Index>((s.array() > rel_tol * s(0)).count());
}

}  // namespace dinet
