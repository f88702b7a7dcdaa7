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

#include "doctest.h"
#include "dinet/errors.hpp"
#include "dinet/experiments.hpp"
#include "support.hpp"

namespace dinet {
namespace {

struct ExperimentOneModel {
  RowMembership pi_r;
  ColumnLabels labels;
  ConnectivityMatrix p;
};

ExperimentOneModel experiment_one(std::uint64_t seed = 1) {
  const ModelParams mp = builtin_config("experiment-1").fixed;
  return {make_row_membership(mp.pure_per_community,
                              mp.n_r - mp.pure_per_community * mp.k_r, mp.mixing),
          sample_uniform_labels(mp.n_c, mp.k_c, seed),
          ConnectivityMatrix(mp.p_tilde, mp.rho)};
}

TEST_CASE("validation accepts the experiment-1 setting") {
  const auto m = experiment_one();
  const ValidationReport report = validate_onm_params(m.pi_r, m.labels, m.p);
  CHECK(report.ok());
  CHECK_NOTHROW(report.require());
}

TEST_CASE("validation names (I2) when a community has no pure row") {
  Matrix pi(3, 2);
  pi << 1, 0, 0.5, 0.5, 0.3, 0.7;
  const ColumnLabels labels({0, 1, 1}, 2);
  const ConnectivityMatrix p((Matrix(2, 2) << 1, 0.2, 0.3, 0.9).finished(), 0.5);
  const ValidationReport report = validate_onm_params(RowMembership(pi), labels, p);
  REQUIRE_FALSE(report.ok());
  CHECK(report.first_failure()->condition == "(I2)");
  try {
    report.require();
    FAIL("expected an identifiability error");
  } catch (const IdentifiabilityError& e) {
    CHECK(e.condition() == "(I2)");
    CHECK(std::string(e.what()).find("(I2)") != std::string::npos);
  }
}

TEST_CASE("validation names (I1) for a rank-deficient connectivity") {
  const RowMembership pi(Matrix::Identity(2, 2));
  const ColumnLabels labels({0, 1}, 2);
  const ConnectivityMatrix p((Matrix(2, 2) << 1, 0.4, 1, 0.4).finished(), 0.5);
  const ValidationReport report = validate_onm_params(pi, labels, p);
  REQUIRE_FALSE(report.ok());
  CHECK(report.first_failure()->condition == "(I1)");
}

TEST_CASE("DCONM validation requires a unit diagonal") {
  const RowMembership pi(Matrix::Identity(2, 2));
  const ColumnLabels labels({0, 1}, 2);
  const ConnectivityMatrix bad((Matrix(2, 2) << 0.9, 0.2, 0.2, 1).finished(), 1.0);
  const ValidationReport report = validate_dconm_params(pi, labels, bad);
  REQUIRE_FALSE(report.ok());
  CHECK(report.first_failure()->condition == "(II1)");
  const ConnectivityMatrix good((Matrix(2, 2) << 1, 0.2, 0.2, 1).finished(), 1.0);
  CHECK(validate_dconm_params(pi, labels, good).ok());
}

TEST_CASE("membership and label invariants are enforced") {
  CHECK_THROWS_AS(RowMembership((Matrix(1, 2) << 0.7, 0.7).finished()), ParameterError);
  CHECK_THROWS_AS(RowMembership((Matrix(1, 2) << 1.2, -0.2).finished()), ParameterError);
  CHECK_THROWS_AS(ColumnLabels({0, 2}, 2), ParameterError);
  CHECK_THROWS(ConnectivityMatrix((Matrix(1, 1) << 0.5).finished(), 1.0));
  CHECK_THROWS(ConnectivityMatrix((Matrix(1, 1) << 1.0).finished(), 0.0));
  CHECK_THROWS(DegreeVector((Vector(2) << 1.0, 0.0).finished(), DegreeRole::kColumn));
}

TEST_CASE("K_r greater than K_c is a dimension error") {
  const RowMembership pi(Matrix::Identity(3, 3));
  const ColumnLabels labels({0, 1}, 2);
  const ConnectivityMatrix p(Matrix::Identity(3, 2) * 0.9 + Matrix::Constant(3, 2, 0.1), 0.5);
  CHECK_THROWS_AS(validate_onm_params(pi, labels, p), DimensionError);
}

TEST_CASE("omega of a scalar model is constant") {
  const RowMembership pi(Matrix::Ones(4, 1));
  const ColumnLabels labels({0, 0, 0}, 1);
  const ConnectivityMatrix p(Matrix::Ones(1, 1), 0.3);
  const PopulationMatrix omega = build_omega(pi, labels, p);
  CHECK((omega.omega().array() - 0.3).abs().maxCoeff() < 1e-15);
}

TEST_CASE("omega matches a hand-computed product") {
  const RowMembership pi((Matrix(3, 2) << 1, 0, 0, 1, 0.5, 0.5).finished());
  const ColumnLabels labels({0, 1}, 2);
  const ConnectivityMatrix p((Matrix(2, 2) << 1, 0.125, 0.125, 0.75).finished(), 0.8);
  Matrix expected(3, 2);
  expected << 0.8, 0.1, 0.1, 0.6, 0.45, 0.35;
  CHECK((build_omega(pi, labels, p).omega() - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("experiment-1 omega spans [0.05, 0.5]") {
  const auto m = experiment_one();
  const Matrix omega = build_omega(m.pi_r, m.labels, m.p).omega();
  CHECK(omega.maxCoeff() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(omega.minCoeff() >= 0.05 - 1e-15);
}

TEST_CASE("degree-corrected omega scales columns and rows") {
  Rng rng(3);
  const auto inst = testing::random_onm(rng, 30, 20, 2, 3);
  const DegreeVector theta_c = sample_column_degrees(20, 4.0, 5);
  const Matrix base = build_omega(inst.pi_r, inst.labels, inst.p).omega();
  const Matrix scaled =
      build_omega(inst.pi_r, inst.labels, inst.p, theta_c).omega();
  CHECK((scaled - base * theta_c.theta().asDiagonal()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS(build_omega(inst.pi_r, inst.labels, inst.p, theta_c,
                           DegreeVector(Vector::Ones(30), DegreeRole::kRow)));
}

TEST_CASE("sampling degenerate probabilities") {
  const PopulationMatrix zeros(Matrix::Zero(5, 4), ModelKind::kOnm);
  CHECK(sample_adjacency(zeros, 1).edge_count() == 0);
  const PopulationMatrix ones(Matrix::Ones(5, 4), ModelKind::kOnm);
  CHECK(sample_adjacency(ones, 1).edge_count() == 20);
}

TEST_CASE("sampled density concentrates around the probability") {
  const PopulationMatrix half(Matrix::Constant(1000, 1000, 0.5), ModelKind::kOnm);
  const BiAdjacency a = sample_adjacency(half, 2024);
  const double mean = static_cast<double>(a.edge_count()) / 1e6;
  CHECK(std::abs(mean - 0.5) < 0.005);
}

TEST_CASE("sampling is deterministic in the seed") {
  const PopulationMatrix omega(Matrix::Constant(40, 30, 0.3), ModelKind::kOnm);
  CHECK(sample_adjacency(omega, 9) == sample_adjacency(omega, 9));
  CHECK_FALSE(sample_adjacency(omega, 9) == sample_adjacency(omega, 10));
}

TEST_CASE("degree sampling") {
  SUBCASE("z = 1 gives unit degrees") {
    const DegreeVector t = sample_column_degrees(50, 1.0, 1);
    CHECK((t.theta().array() == 1.0).all());
  }
  SUBCASE("mean of 1/theta approaches (1 + z) / 2") {
    const DegreeVector t = sample_column_degrees(100000, 8.0, 2);
    CHECK(std::abs(t.theta().cwiseInverse().mean() - 4.5) < 0.02);
  }
  SUBCASE("z = 3 keeps theta in [1/3, 1]") {
    const DegreeVector t = sample_column_degrees(10000, 3.0, 3);
    CHECK(t.theta().minCoeff() >= 1.0 / 3.0);
    CHECK(t.theta().maxCoeff() <= 1.0);
  }
  CHECK_THROWS_AS(sample_column_degrees(5, 0.5, 1), ParameterError);
}

TEST_CASE("uniform labels fill every community") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    int resamples = 0;
    const ColumnLabels l = sample_uniform_labels(8, 4, seed, &resamples);
    CHECK(l.all_communities_nonempty());
    CHECK(resamples >= 0);
  }
  CHECK_THROWS(sample_uniform_labels(3, 4, 1));
}

TEST_CASE("bi-adjacency normalizes its edge list") {
  const BiAdjacency a(2, 3, {{1, 2}, {0, 1}, {1, 2}});
  REQUIRE(a.edge_count() == 2);
  CHECK(a.edges()[0] == BiAdjacency::Edge{0, 1});
  CHECK(a.to_dense()(1, 2) == 1.0);
  CHECK(a.to_sparse().nonZeros() == 2);
  CHECK_THROWS_AS(BiAdjacency(2, 2, {{2, 0}}), DimensionError);
}

TEST_CASE("property: omega of random valid models lies in [0, rho]") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const Index k_r = testing::uniform_int(rng, 1, 4);
    const Index k_c = testing::uniform_int(rng, k_r, 5);
    const auto inst = testing::random_onm(rng, testing::uniform_int(rng, 10, 60),
                                          testing::uniform_int(rng, 10, 60), k_r, k_c);
    CHECK(validate_onm_params(inst.pi_r, inst.labels, inst.p).ok());
    const Matrix omega = build_omega(inst.pi_r, inst.labels, inst.p).omega();
    CHECK(omega.minCoeff() >= 0.0);
    CHECK(omega.maxCoeff() <= inst.p.rho() + 1e-15);
  }
}

}  // namespace
}  // namespace dinet
