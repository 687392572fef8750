// Copyright 2026 The bsnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bsnet/qstate.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"

using namespace bsnet;

namespace {

DensityOperator basis_projector(int n, Eigen::Index index) {
  return DensityOperator::from_pure(PureState::basis(n, index));
}

DensityOperator bell_phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return DensityOperator::from_pure(PureState(v));
}

void expect_matrix_near(const Matrix& a, const Matrix& b, double tol) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), tol);
}

}  // namespace

TEST(Tensor, MaximallyMixedProduct) {
  const auto mixed = DensityOperator::maximally_mixed(1);
  const auto rho = tensor({mixed, mixed});
  expect_matrix_near(rho.matrix(), Matrix::Identity(4, 4) / 4.0, 1e-15);
}

TEST(Tensor, BasisProductIsBigEndian) {
  const auto rho = tensor({basis_projector(1, 0), basis_projector(1, 1)});
  expect_matrix_near(rho.matrix(), basis_projector(2, 1).matrix(), 0.0);
}

TEST(Tensor, PurityIsMultiplicative) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = random_state(1, 2, seed);
    const auto b = random_state(1, 2, seed + 100);
    const double expected = oracle::purity(a.matrix()) * oracle::purity(b.matrix());
    EXPECT_NEAR(purity(tensor({a, b})), expected, 1e-14);
  }
}

TEST(Tensor, CapacityError) {
  std::vector<DensityOperator> parts(3, DensityOperator::maximally_mixed(1));
  EXPECT_THROW(tensor(std::span<const DensityOperator>(parts), 2), CapacityError);
  EXPECT_NO_THROW(tensor(std::span<const DensityOperator>(parts), 3));
}

TEST(PartialTrace, BellReducesToMaximallyMixed) {
  const auto reduced = partial_trace(bell_phi_plus(), {1});
  expect_matrix_near(reduced.matrix(), Matrix::Identity(2, 2) / 2.0, 1e-15);
}

TEST(PartialTrace, ProductKeepsSecondFactor) {
  const auto reduced = partial_trace(basis_projector(2, 1), {2});
  expect_matrix_near(reduced.matrix(), basis_projector(1, 1).matrix(), 0.0);
}

TEST(PartialTrace, ClusterEndReductionHasPurityHalf) {
  const DensityOperator rho = DensityOperator::from_pure(PureState(oracle::cluster_by_sign_rule(3)));
  const auto reduced = partial_trace(rho, {1, 2});
  EXPECT_NEAR(purity(reduced), 0.5, 1e-12);
  EXPECT_NEAR(oracle::purity(oracle::partial_trace(rho.matrix(), 3, {1, 2})), 0.5, 1e-12);
}

TEST(PartialTrace, EmptyOrOutOfRangeKeepRejected) {
  const auto rho = random_state(2, 2, 3);
  EXPECT_THROW(partial_trace(rho, SubsetIndex::full_trace_sentinel()), ArgumentError);
  EXPECT_THROW(partial_trace(rho, {3}), ArgumentError);
}

TEST(PartialTrace, MatchesKroneckerOracleOnArbitraryKeepSets) {
  const auto rho = random_state(4, 3, 11);
  for (SiteMask mask = 1; mask < 16; ++mask) {
    const auto keep = SubsetIndex::from_mask(mask);
    expect_matrix_near(partial_trace(rho, keep).matrix(),
                       oracle::partial_trace(rho.matrix(), 4, keep.members()), 1e-14);
  }
}

TEST(PartialTrace, PureAndDensityRoutesAgree) {
  const auto psi = random_pure_state(4, 5);
  const auto rho = DensityOperator::from_pure(psi);
  for (SiteMask mask = 1; mask < 16; ++mask) {
    const auto keep = SubsetIndex::from_mask(mask);
    expect_matrix_near(partial_trace(psi, keep).matrix(), partial_trace(rho, keep).matrix(),
                       1e-14);
  }
}

// Property sweeps over seeded random states.
TEST(PartialTraceProperties, TraceHermiticityNestingRoundTrip) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const int rank = 1 + static_cast<int>(seed % 4);
    const auto rho = random_state(n, rank, seed);
    const SiteMask full = (SiteMask{1} << n) - 1;
    for (SiteMask mask = 1; mask <= full; ++mask) {
      const auto reduced = partial_trace(rho, SubsetIndex::from_mask(mask));
      EXPECT_NEAR(reduced.matrix().trace().real(), 1.0, 1e-12);
      EXPECT_TRUE(validate(reduced.matrix()).passed);
      // nesting: T -> T' equals direct T'
      for (SiteMask sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        const auto t = SubsetIndex::from_mask(mask).members();
        const auto tp = SubsetIndex::from_mask(sub).members();
        std::vector<int> relabel;
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (std::find(tp.begin(), tp.end(), t[i]) != tp.end()) {
            relabel.push_back(static_cast<int>(i) + 1);
          }
        }
        expect_matrix_near(partial_trace(reduced, SubsetIndex(relabel)).matrix(),
                           partial_trace(rho, SubsetIndex::from_mask(sub)).matrix(), 1e-12);
      }
    }
    const double p = purity(rho);
    EXPECT_LE(p, 1.0 + 1e-12);
    EXPECT_GE(p, 1.0 / static_cast<double>(rho.dimension()) - 1e-12);

    const auto a = random_state(1, 2, seed + 1000);
    const auto b = random_state(2, 3, seed + 2000);
    expect_matrix_near(partial_trace(tensor({a, b}), {1}).matrix(), a.matrix(), 1e-12);
  }
}

TEST(Purity, ReferenceValues) {
  EXPECT_DOUBLE_EQ(purity(DensityOperator::maximally_mixed(1)), 0.5);
  EXPECT_DOUBLE_EQ(purity(DensityOperator::maximally_mixed(2)), 0.25);
  EXPECT_NEAR(purity(DensityOperator::from_pure(random_pure_state(3, 9))), 1.0, 1e-12);
}

TEST(Validate, MaximallyMixedPassesWithZeroDeviation) {
  const auto r = validate(Matrix::Identity(2, 2) / 2.0);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.hermiticity_deviation, 0.0);
  EXPECT_EQ(r.trace_deviation, 0.0);
  EXPECT_NEAR(r.min_eigenvalue, 0.5, 1e-15);
}

TEST(Validate, NonHermitianPerturbationFails) {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  m(0, 1) += 1e-6;
  const auto r = validate(m);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.hermiticity_deviation, 1e-6, 1e-12);
  EXPECT_THROW(DensityOperator{m}, InvalidStateError);
}

TEST(Validate, NegativeEigenvalueAndTraceFailures) {
  Matrix neg(2, 2);
  neg << 1.1, 0.0, 0.0, -0.1;
  EXPECT_FALSE(validate(neg).passed);
  EXPECT_NEAR(validate(neg).min_eigenvalue, -0.1, 1e-15);
  EXPECT_FALSE(validate(Matrix::Identity(2, 2)).passed);
  EXPECT_FALSE(validate(Matrix::Identity(2, 3)).passed);
}

TEST(Validate, RandomPureProjectorPasses) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_TRUE(validate(random_state(3, 1, seed).matrix()).passed);
  }
}

TEST(RandomState, PureRankOne) {
  EXPECT_NEAR(purity(random_state(1, 1, 42)), 1.0, 1e-12);
}

TEST(RandomState, RankControlsSpectrum) {
  const auto rho = random_state(3, 2, 8);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  int positive = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) positive += es.eigenvalues()(i) > 1e-10;
  EXPECT_EQ(positive, 2);
  const double p = purity(random_state(2, 4, 1));
  EXPECT_GE(p, 0.25);
  EXPECT_LE(p, 1.0);
}

TEST(RandomState, DeterministicPerSeed) {
  const auto a = random_state(3, 4, 1234);
  const auto b = random_state(3, 4, 1234);
  EXPECT_TRUE((a.matrix().array() == b.matrix().array()).all());
  EXPECT_FALSE((a.matrix().array() == random_state(3, 4, 1235).matrix().array()).all());
}

TEST(RandomState, RankOutOfRange) {
  EXPECT_THROW(random_state(1, 0, 1), ArgumentError);
  EXPECT_THROW(random_state(1, 3, 1), ArgumentError);
  EXPECT_THROW(random_state(15, 1, 1), CapacityError);
}

TEST(PureState, RejectsUnnormalized) {
  Vector v = Vector::Ones(4);
  EXPECT_THROW(PureState{v}, InvalidStateError);
  EXPECT_NO_THROW(PureState::normalized(v));
  EXPECT_THROW(PureState::normalized(Vector::Zero(4)), InvalidStateError);
  EXPECT_THROW(PureState::normalized(Vector::Ones(3)), InvalidStateError);
}

TEST(SubsetIndex, Invariants) {
  const SubsetIndex s{3, 1};
  EXPECT_EQ(s.members(), (std::vector<int>{1, 3}));
  EXPECT_EQ(s.mask(), 0b101u);
  EXPECT_EQ(SubsetIndex::from_mask(0b101), s);
  EXPECT_THROW(SubsetIndex({1, 1}), ArgumentError);
  EXPECT_THROW(SubsetIndex({0}), ArgumentError);
  EXPECT_THROW(SubsetIndex(std::vector<int>{}), ArgumentError);
  EXPECT_TRUE(SubsetIndex::full_trace_sentinel().empty());
  EXPECT_TRUE((SubsetIndex{1}).is_subset_of(s));
  EXPECT_FALSE((SubsetIndex{2}).is_subset_of(s));
}
