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

#include "bsnet/state_factory.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

using namespace bsnet;
using Precise = boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double kPi = std::numbers::pi;

PureState ket0() { return bloch_state(0.0, 0.0); }
PureState ket1() { return bloch_state(kPi, 0.0); }

// Real overlap c between |0> and cos(a)|0> + sin(a)|1>.
PureState tilted(double c) {
  Vector v(2);
  v << c, std::sqrt(1.0 - c * c);
  return PureState(v);
}

// Purity of the last-m-traced cat state via the Kronecker oracle.
double brute_force_cat_purity(const PureState& psi, int n, int m) {
  if (m == n) return 1.0;
  std::vector<int> keep;
  for (int k = 1; k <= n - m; ++k) keep.push_back(k);
  const Matrix rho = oracle::projector(psi.amplitudes());
  return oracle::purity(oracle::partial_trace(rho, n, keep));
}

}  // namespace

TEST(LinearCluster, TwoSites) {
  const auto c = linear_cluster(2);
  EXPECT_NEAR(std::abs(c[0] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c[1] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c[2] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c[3] + 0.5), 0.0, 1e-15);
}

TEST(LinearCluster, MatchesSignRule) {
  for (int n = 2; n <= 8; ++n) {
    EXPECT_LE((linear_cluster(n).amplitudes() - oracle::cluster_by_sign_rule(n)).norm(), 1e-14);
  }
}

TEST(LinearCluster, ThreeSiteSingleReductionsAreMaximallyMixed) {
  const Matrix rho = oracle::projector(linear_cluster(3).amplitudes());
  for (int k = 1; k <= 3; ++k) {
    EXPECT_NEAR(oracle::purity(oracle::partial_trace(rho, 3, {k})), 0.5, 1e-12);
  }
}

TEST(LinearCluster, RangeChecks) {
  EXPECT_THROW(linear_cluster(1), ArgumentError);
  EXPECT_THROW(linear_cluster(15), CapacityError);
}

TEST(ClusterFamily, EndpointsAreExact) {
  for (int n = 2; n <= 6; ++n) {
    const auto zero = cluster_family_state({n, 0.0});
    EXPECT_NEAR(std::abs(zero[0]), 1.0, 1e-15);
    const auto pi = cluster_family_state({n, kPi});
    EXPECT_LE((pi.amplitudes() - linear_cluster(n).amplitudes()).norm(), 1e-15);
  }
}

TEST(ClusterFamily, NormalizedEverywhere) {
  for (int n = 2; n <= 7; ++n) {
    for (int i = 0; i <= 100; ++i) {
      const double phi = 2.0 * kPi * i / 100.0;
      EXPECT_NEAR(cluster_family_state({n, phi}).amplitudes().norm(), 1.0, 1e-12);
    }
  }
}

TEST(ClusterFamily, HalfPiIsEntangledOnFirstLink) {
  const Matrix rho = oracle::projector(cluster_family_state({3, kPi / 2}).amplitudes());
  const double v1 = oracle::purity(rho) - oracle::purity(oracle::partial_trace(rho, 3, {1, 2}));
  EXPECT_GT(v1, 0.1);
}

TEST(ClusterFamily, PhiOutsideRangeRejected) {
  EXPECT_THROW(cluster_family_state({3, -0.1}), ArgumentError);
  EXPECT_THROW(cluster_family_state({3, 7.0}), ArgumentError);
}

TEST(Ghz, BellPairHasHalfPurityReduction) {
  const Matrix rho = oracle::projector(ghz(2).amplitudes());
  EXPECT_NEAR(oracle::purity(oracle::partial_trace(rho, 2, {1})), 0.5, 1e-15);
}

TEST(Ghz, EqualsOrthogonalCat) {
  for (int n = 2; n <= 6; ++n) {
    const auto cat = cat_state(n, ket0(), ket1());
    const Complex ov = ghz(n).amplitudes().dot(cat.state.amplitudes());
    EXPECT_NEAR(std::abs(ov), 1.0, 1e-14);
  }
}

TEST(CatState, IdenticalBranchesGiveProduct) {
  const auto phi = bloch_state(1.1, 0.4);
  const auto cat = cat_state(4, phi, phi);
  EXPECT_NEAR(cat.spec.gamma, 1.0, 1e-12);
  EXPECT_NEAR(cat.spec.epsilon, 0.0, 1e-6);
  for (int m = 0; m <= 4; ++m) {
    EXPECT_NEAR(brute_force_cat_purity(cat.state, 4, m), 1.0, 1e-12);
  }
}

TEST(CatState, OrthogonalBranchesAreGhz) {
  const auto cat = cat_state(3, ket0(), ket1());
  EXPECT_DOUBLE_EQ(cat.spec.epsilon, 1.0);
  EXPECT_DOUBLE_EQ(cat.spec.S, 3.0);
  EXPECT_DOUBLE_EQ(cat.spec.K, 2.0);
}

TEST(CatState, SpecInvariants) {
  const auto a = bloch_state(0.3, 0.0);
  const auto b = bloch_state(1.2, 0.7);
  for (int n = 2; n <= 7; ++n) {
    const auto cat = cat_state(n, a, b);
    const auto& s = cat.spec;
    EXPECT_NEAR(s.epsilon * s.epsilon + s.gamma, 1.0, 1e-12);
    EXPECT_NEAR(s.K, 2.0 + 2.0 * std::pow(s.overlap, n).real(), 1e-12);
    EXPECT_NEAR(s.S, n * s.epsilon * s.epsilon, 1e-12);
    // K is the squared norm of the unnormalized superposition
    std::vector<PureState> aa(n, a), bb(n, b);
    const Vector raw = tensor(std::span<const PureState>(aa)).amplitudes() +
                       tensor(std::span<const PureState>(bb)).amplitudes();
    EXPECT_NEAR(raw.squaredNorm(), s.K, 1e-12);
  }
}

TEST(CatState, CancellingBranchesRejected) {
  Vector minus0(2);
  minus0 << -1.0, 0.0;
  EXPECT_THROW(cat_state(3, ket0(), PureState(minus0)), DegenerateSuperpositionError);
  EXPECT_THROW(cat_state(2, ket0(), linear_cluster(2)), ArgumentError);
}

TEST(CatPurity, SixSitesOverlapHalfMatchesBruteForce) {
  const auto cat = cat_state(6, ket0(), tilted(0.5));
  EXPECT_NEAR(cat.spec.gamma, 0.25, 1e-15);
  for (int m = 0; m <= 6; ++m) {
    EXPECT_NEAR(cat_purity_closed_form<double>(6, m, 0.25),
                brute_force_cat_purity(cat.state, 6, m), 1e-12)
        << "m=" << m;
  }
}

TEST(CatPurity, ClosedFormReferenceValues) {
  EXPECT_NEAR(cat_purity_closed_form<double>(10, 0, 0.3), 1.0, 1e-15);
  EXPECT_NEAR(cat_purity_closed_form<double>(300, 7, 0.0), 0.5, 0.0);
  // Frozen from the brute-force oracle (real overlap 0.5, trace 2 of 6 sites).
  const double oracle_value = brute_force_cat_purity(cat_state(6, ket0(), tilted(0.5)).state, 6, 2);
  EXPECT_NEAR(oracle_value, 0.54734, 5e-6);
  EXPECT_NEAR(cat_purity_closed_form<double>(6, 2, 0.25), oracle_value, 1e-12);
}

TEST(CatPurity, ArgumentChecks) {
  EXPECT_THROW(cat_purity_closed_form<double>(5, 6, 0.5), ArgumentError);
  EXPECT_THROW(cat_purity_closed_form<double>(5, -1, 0.5), ArgumentError);
  EXPECT_THROW(cat_purity_closed_form<double>(5, 1, 1.5), ArgumentError);
}

TEST(CatPurity, ClosedFormAgainstBruteForceGrid) {
  for (int n : {4, 6}) {
    for (int c10 = 0; c10 <= 10; ++c10) {
      const double c = c10 / 10.0;
      const auto cat = cat_state(n, ket0(), tilted(c));
      for (int m = 0; m <= n; ++m) {
        EXPECT_NEAR(cat_purity_closed_form<double>(n, m, c * c),
                    brute_force_cat_purity(cat.state, n, m), 1e-12);
      }
    }
  }
}

TEST(CatPurity, ComplexOverlapTakesPartialTraceRoute) {
  const auto cat = cat_state(5, bloch_state(0.8, 0.0), bloch_state(1.0, 0.9));
  EXPECT_FALSE(has_real_nonnegative_overlap(cat.spec));
  for (int m = 0; m <= 5; ++m) {
    EXPECT_NEAR(cat_purity(cat, m), brute_force_cat_purity(cat.state, 5, m), 1e-12);
  }
  const auto real_cat = cat_state(5, ket0(), tilted(0.3));
  EXPECT_TRUE(has_real_nonnegative_overlap(real_cat.spec));
  EXPECT_NEAR(cat_purity(real_cat, 2), brute_force_cat_purity(real_cat.state, 5, 2), 1e-12);
}

TEST(CatPurity, ApproachesHalfMonotonically) {
  for (int g = 1; g < 20; ++g) {
    const double gamma = g / 20.0;
    double previous = std::abs(cat_purity_closed_form<double>(300, 1, gamma) - 0.5);
    for (int m = 2; m <= 150; ++m) {
      const double d = std::abs(cat_purity_closed_form<double>(300, m, gamma) - 0.5);
      EXPECT_LE(d, previous) << "gamma=" << gamma << " m=" << m;
      previous = d;
    }
  }
}

TEST(EstimateEpsilon, Endpoints) {
  EXPECT_EQ(estimate_epsilon(1.0, 300, 7), 0.0);
  EXPECT_EQ(estimate_epsilon(0.5, 300, 7), 1.0);
}

TEST(EstimateEpsilon, RoundTripAtPointSix) {
  const double purity = cat_purity_closed_form<double>(300, 15, 1.0 - 0.36);
  EXPECT_NEAR(estimate_epsilon(purity, 300, 15), 0.6, 1e-6);
}

TEST(EstimateEpsilon, RejectsOutOfBandAndUninformative) {
  EXPECT_THROW(estimate_epsilon(0.4, 300, 7), InversionError);
  EXPECT_THROW(estimate_epsilon(1.1, 300, 7), InversionError);
  EXPECT_THROW(estimate_epsilon(0.9, 300, 0), ArgumentError);
  EXPECT_THROW(estimate_epsilon(0.9, 300, 300), ArgumentError);
  try {
    estimate_epsilon(0.3, 300, 7);
  } catch (const InversionError& e) {
    EXPECT_DOUBLE_EQ(e.achievable_low(), 0.5);
    EXPECT_DOUBLE_EQ(e.achievable_high(), 1.0);
  }
}

// Near eps = 1 the excess purity gamma^n / 2 drops below double resolution of
// values around 1/2, so the round trip runs in 50-digit arithmetic.
TEST(EstimateEpsilon, RoundTripIdentityInExtendedPrecision) {
  for (int e = 1; e <= 20; ++e) {
    const Precise eps = Precise(e) / 20;
    const Precise gamma = 1 - eps * eps;
    for (int n = 1; n <= 20; ++n) {
      const Precise p = cat_purity_closed_form<Precise>(300, Precise(n), gamma);
      const Precise back = estimate_epsilon<Precise>(p, 300, Precise(n));
      EXPECT_LE(static_cast<double>(abs(back - eps)), 1e-6) << "eps=" << eps << " n=" << n;
    }
  }
}

TEST(EstimateEpsilon, DoubleRoundTripWhereResolvable) {
  for (double eps : {0.05, 0.1, 0.3, 0.6}) {
    for (int n = 1; n <= 20; ++n) {
      const double p = cat_purity_closed_form<double>(300, n, 1.0 - eps * eps);
      EXPECT_NEAR(estimate_epsilon(p, 300, n), eps, 1e-6) << "eps=" << eps << " n=" << n;
    }
  }
}

TEST(EffectiveSize, IsNEpsilonSquared) {
  EXPECT_DOUBLE_EQ(effective_size(300, 1.0), 300.0);
  EXPECT_DOUBLE_EQ(effective_size(300, 0.5), 75.0);
}
