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

#ifndef BSNET_SEPARABILITY_HPP
#define BSNET_SEPARABILITY_HPP

// Purity-chain separability test: for a separable state every reduction can
// only increase purity, so tr(rho_A^2) > tr(rho_B^2) for some B inside A
// certifies entanglement. Also the two-qubit CHSH benchmark.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "bsnet/errors.hpp"
#include "bsnet/qstate.hpp"
#include "bsnet/state_factory.hpp"

namespace bsnet {

inline constexpr double kViolationThreshold = 1e-9;

// tr(rho_T^2) for every subset T of {1..N}, indexed by site mask. The empty
// mask holds the fixed value 1.
class SubsetPurityMap {
 public:
  SubsetPurityMap(int n_sites, std::vector<double> by_mask)
      : n_(n_sites), values_(std::move(by_mask)) {
    if (n_sites < 1 || n_sites > 30) throw ArgumentError("site count out of range");
    if (values_.size() != (std::size_t{1} << n_sites)) {
      throw ArgumentError("purity map needs 2^N entries");
    }
    values_[0] = 1.0;
    for (std::size_t m = 1; m < values_.size(); ++m) {
      if (!(values_[m] >= -kNormTolerance && values_[m] <= 1.0 + kNormTolerance)) {
        throw ArgumentError("purity of " + SubsetIndex::from_mask(static_cast<SiteMask>(m)).to_string() +
                            " outside [0, 1]: " + std::to_string(values_[m]));
      }
    }
  }

  int n_sites() const noexcept { return n_; }
  std::size_t nonempty_count() const noexcept { return values_.size() - 1; }

  double at_mask(SiteMask mask) const { return values_.at(mask); }

  double operator[](const SubsetIndex& subset) const {
    if (subset.max_site() > n_) throw ArgumentError("subset outside the site range");
    return values_[subset.mask()];
  }

  const std::vector<double>& by_mask() const noexcept { return values_; }

 private:
  int n_;
  std::vector<double> values_;
};

inline SubsetPurityMap all_subset_purities(const DensityOperator& rho,
                                           int qubit_cap = kDefaultQubitCap) {
  const int n = rho.n_qubits();
  check_qubit_cap(n, qubit_cap);
  std::vector<double> values(std::size_t{1} << n);
  values[0] = 1.0;
  for (SiteMask mask = 1; mask < values.size(); ++mask) {
    values[mask] = detail::reduce(rho.matrix(), n, mask).squaredNorm();
  }
  return SubsetPurityMap(n, std::move(values));
}

// Pure-state path: Gram matrix of the Schmidt reshape, never forming rho.
inline SubsetPurityMap all_subset_purities(const PureState& psi,
                                           int qubit_cap = kDefaultQubitCap) {
  const int n = psi.n_qubits();
  check_qubit_cap(n, qubit_cap);
  std::vector<double> values(std::size_t{1} << n);
  values[0] = 1.0;
  const SiteMask full = detail::all_sites(n);
  for (SiteMask mask = 1; mask < values.size(); ++mask) {
    values[mask] = mask == full
                       ? psi.amplitudes().squaredNorm() * psi.amplitudes().squaredNorm()
                       : detail::gram_purity(detail::schmidt_matrix(psi.amplitudes(), n, mask));
  }
  return SubsetPurityMap(n, std::move(values));
}

struct ChainLink {
  SubsetIndex larger;
  SubsetIndex smaller;
  double violation;  // purity(larger) - purity(smaller)
  bool violated;
};

struct ChainReport {
  std::vector<SubsetIndex> chain;
  std::vector<ChainLink> links;       // one per adjacent pair
  std::vector<ChainLink> violations;  // links with violation > threshold
  double threshold = kViolationThreshold;

  bool entangled() const noexcept { return !violations.empty(); }
};

inline ChainReport check_chain(const SubsetPurityMap& map,
                               const std::vector<SubsetIndex>& chain,
                               double threshold = kViolationThreshold) {
  if (chain.size() < 2) throw ArgumentError("a chain needs at least two subsets");
  ChainReport report;
  report.chain = chain;
  report.threshold = threshold;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const SubsetIndex& big = chain[i];
    const SubsetIndex& small = chain[i + 1];
    if (!small.is_subset_of(big) || small.size() >= big.size()) {
      throw ArgumentError("chain not strictly nested at " + big.to_string() +
                          " > " + small.to_string());
    }
    const double v = map[big] - map[small];
    ChainLink link{big, small, v, v > threshold};
    if (link.violated) report.violations.push_back(link);
    report.links.push_back(std::move(link));
  }
  return report;
}

// {1..N} > {1..N-1} > ... > {1}
inline std::vector<SubsetIndex> left_to_right_chain(int n_sites) {
  std::vector<SubsetIndex> chain;
  for (int k = n_sites; k >= 1; --k) chain.push_back(SubsetIndex::range(1, k));
  return chain;
}

// Every chain from the full set down to a singleton removing one site per
// step; N! chains in removal-order lexicographic order.
inline std::vector<std::vector<SubsetIndex>> maximal_chains(int n_sites) {
  std::vector<int> order(static_cast<std::size_t>(n_sites));
  std::iota(order.begin(), order.end(), 1);
  std::vector<std::vector<SubsetIndex>> chains;
  do {
    std::vector<SubsetIndex> chain;
    std::vector<int> remaining = order;
    std::sort(remaining.begin(), remaining.end());
    chain.emplace_back(remaining);
    for (int i = 0; i + 1 < n_sites; ++i) {
      remaining.erase(std::find(remaining.begin(), remaining.end(), order[i]));
      chain.emplace_back(remaining);
    }
    chains.push_back(std::move(chain));
  } while (std::next_permutation(order.begin(), order.end()));
  return chains;
}

struct Fig2aViolations {
  double v1;  // purity(1..N) - purity(1..N-1)
  double v2;  // purity(1..N-1) - purity(1..N-2)
  double v3;  // purity(1..N-1) - purity(2..N-1)
};

// For N = 3: V1 = P(123) - P(12), V2 = P(12) - P(1), V3 = P(12) - P(2).
inline Fig2aViolations fig2a_violations(double phi, int n_sites = 3) {
  if (n_sites < 3) throw ArgumentError("fig2a violations need N >= 3");
  const auto map = all_subset_purities(cluster_family_state({n_sites, phi}));
  const double full = map[SubsetIndex::range(1, n_sites)];
  const double head = map[SubsetIndex::range(1, n_sites - 1)];
  const double head_short = map[SubsetIndex::range(1, n_sites - 2)];
  const double head_tail = map[SubsetIndex::range(2, n_sites - 1)];
  return {full - head, head - head_short, head - head_tail};
}

namespace detail {

inline std::array<Matrix, 3> pauli_matrices() {
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  return {x, y, z};
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace detail

// T_ij = tr(rho sigma_i (x) sigma_j)
inline Eigen::Matrix3d correlation_matrix(const DensityOperator& rho) {
  if (rho.n_qubits() != 2) throw ArgumentError("correlation matrix needs a 2-qubit state");
  const auto s = detail::pauli_matrices();
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      t(i, j) = (rho.matrix() * detail::kron(s[i], s[j])).trace().real();
    }
  }
  return t;
}

// Largest CHSH value over all settings: 2 sqrt(m1 + m2) with m1 >= m2 the
// top eigenvalues of T^T T.
inline double chsh_max(const DensityOperator& rho) {
  const Eigen::Matrix3d t = correlation_matrix(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t);
  const Eigen::Vector3d ev = es.eigenvalues();  // ascending
  return 2.0 * std::sqrt(std::max(0.0, ev(1) + ev(2)));
}

}  // namespace bsnet

#endif  // BSNET_SEPARABILITY_HPP
