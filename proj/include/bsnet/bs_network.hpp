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

#ifndef BSNET_BS_NETWORK_HPP
#define BSNET_BS_NETWORK_HPP

// Two-copy pairwise beam-splitter measurement at the projector level.
//
// Each site pair (one boson from each copy) exits the beam splitter either
// bunched (symmetric, sign +) or split (antisymmetric, sign -). For the
// joint outcome s in {+,-}^N,
//
//   P_s = tr[ prod_i (I + s_i V_i)/2  rho (x) rho ]
//       = 2^{-N} sum_T (prod_{i in T} s_i) tr(rho_T^2),
//
// a Walsh-Hadamard transform of the subset purities. A sign vector is
// stored as the mask of its "-" sites (bit i-1 for site i), so table index
// 0 is all "+".

#include <bit>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bsnet/errors.hpp"
#include "bsnet/qstate.hpp"
#include "bsnet/separability.hpp"

namespace bsnet {

inline constexpr double kProbabilityTolerance = 1e-12;
inline constexpr double kTableSumTolerance = 1e-8;
inline constexpr int kOracleSiteCap = 4;

class SignVector {
 public:
  SignVector(int n_sites, SiteMask minus_mask) : n_(n_sites), minus_(minus_mask) {
    if (n_sites < 1 || n_sites > 30) throw ArgumentError("sign vector length out of range");
    if (minus_mask >> n_sites) throw ArgumentError("sign mask exceeds the vector length");
  }

  // Parses a string such as "+-+".
  explicit SignVector(const std::string& signs) : n_(static_cast<int>(signs.size())) {
    if (signs.empty() || signs.size() > 30) throw ArgumentError("sign string length out of range");
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (signs[i] == '-') {
        minus_ |= SiteMask{1} << i;
      } else if (signs[i] != '+') {
        throw ArgumentError("sign strings use only '+' and '-'");
      }
    }
  }

  int size() const noexcept { return n_; }
  SiteMask minus_mask() const noexcept { return minus_; }

  // s_i for 1-based site i
  int operator[](int site) const noexcept {
    return (minus_ >> (site - 1)) & 1U ? -1 : 1;
  }

  std::string to_string() const {
    std::string s;
    for (int i = 1; i <= n_; ++i) s += (*this)[i] > 0 ? '+' : '-';
    return s;
  }

 private:
  int n_;
  SiteMask minus_ = 0;
};

class JointSignProbabilityTable {
 public:
  JointSignProbabilityTable(int n_sites, std::vector<double> by_minus_mask)
      : n_(n_sites), p_(std::move(by_minus_mask)) {
    if (n_sites < 1 || n_sites > 30) throw ArgumentError("site count out of range");
    if (p_.size() != (std::size_t{1} << n_sites)) {
      throw ArgumentError("probability table needs 2^N entries");
    }
    for (double p : p_) {
      if (!(p >= -kProbabilityTolerance && p <= 1.0 + kProbabilityTolerance)) {
        throw ArgumentError("probability outside [0, 1]: " + std::to_string(p));
      }
    }
  }

  int n_sites() const noexcept { return n_; }
  double operator[](const SignVector& s) const {
    if (s.size() != n_) throw ArgumentError("sign vector length does not match the table");
    return p_[s.minus_mask()];
  }
  const std::vector<double>& by_minus_mask() const noexcept { return p_; }

  double sum() const noexcept {
    double acc = 0.0;
    for (double p : p_) acc += p;
    return acc;
  }

 private:
  int n_;
  std::vector<double> p_;
};

namespace detail {

// Unnormalized in-place Walsh-Hadamard transform; length must be 2^k.
inline void walsh_hadamard(std::vector<double>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

inline void require_power_of_two(std::size_t n) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw ArgumentError("transform length must be a power of two >= 2");
  }
}

}  // namespace detail

// Subset values (index 0 = empty set) -> joint sign probabilities. Works on
// arbitrary numbers, physical or not.
inline std::vector<double> sign_transform(std::span<const double> by_subset_mask) {
  detail::require_power_of_two(by_subset_mask.size());
  std::vector<double> v(by_subset_mask.begin(), by_subset_mask.end());
  detail::walsh_hadamard(v);
  const double scale = 1.0 / static_cast<double>(v.size());
  for (double& x : v) x *= scale;
  return v;
}

inline std::vector<double> inverse_sign_transform(std::span<const double> by_minus_mask) {
  detail::require_power_of_two(by_minus_mask.size());
  std::vector<double> v(by_minus_mask.begin(), by_minus_mask.end());
  detail::walsh_hadamard(v);
  return v;
}

struct PairProbabilities {
  double plus;   // symmetric: both bosons leave in the same row
  double minus;  // antisymmetric: one boson per row
};

inline void require_single_qubit(const DensityOperator& rho) {
  if (rho.n_qubits() != 1) throw ArgumentError("expected a single-qubit state");
}

inline PairProbabilities pair_projection_probabilities(const DensityOperator& rho_j) {
  require_single_qubit(rho_j);
  const double p = purity(rho_j);
  return {0.5 + 0.5 * p, 0.5 - 0.5 * p};
}

// Expectations of the symmetric (triplet) and antisymmetric (singlet)
// projectors on rho_j (x) rho_j. Internal state a = |0>, b = |1>; the first
// letter refers to copy one, the second to copy two.
struct TripletSingletWeights {
  static constexpr const char* kConvention =
      "aa: |a,a>; bb: |b,b>; ab: (|a,b> + |b,a>)/sqrt2; singlet: (|a,b> - |b,a>)/sqrt2";

  double w_aa;
  double w_ab;
  double w_bb;
  double w_singlet;

  double sum() const noexcept { return w_aa + w_ab + w_bb + w_singlet; }
};

inline TripletSingletWeights triplet_singlet_weights(const DensityOperator& rho_j) {
  require_single_qubit(rho_j);
  const Matrix two = detail::kron(rho_j.matrix(), rho_j.matrix());
  const double r = std::numbers::sqrt2 / 2.0;
  Vector sym(4), anti(4);
  sym << 0.0, r, r, 0.0;
  anti << 0.0, r, -r, 0.0;
  const auto expect = [&](const Vector& v) { return v.dot(two * v).real(); };
  return {two(0, 0).real(), expect(sym), two(3, 3).real(), expect(anti)};
}

inline JointSignProbabilityTable table_from_purities(const SubsetPurityMap& map) {
  auto p = sign_transform(map.by_mask());
  for (double& x : p) {
    if (x < 0.0 && x > -kProbabilityTolerance) x = 0.0;
  }
  return JointSignProbabilityTable(map.n_sites(), std::move(p));
}

inline JointSignProbabilityTable joint_sign_probabilities(const DensityOperator& rho,
                                                          int qubit_cap = kDefaultQubitCap) {
  return table_from_purities(all_subset_purities(rho, qubit_cap));
}

inline JointSignProbabilityTable joint_sign_probabilities(const PureState& psi,
                                                          int qubit_cap = kDefaultQubitCap) {
  return table_from_purities(all_subset_purities(psi, qubit_cap));
}

inline SubsetPurityMap purities_from_probabilities(const JointSignProbabilityTable& table) {
  const double deficit = 1.0 - table.sum();
  if (!(std::abs(deficit) <= kTableSumTolerance)) {
    throw NormalizationError("joint sign probabilities do not sum to 1", deficit);
  }
  auto values = inverse_sign_transform(table.by_minus_mask());
  return SubsetPurityMap(table.n_sites(), std::move(values));
}

// Sums out the sign of `site`, giving the table of the remaining N-1 sites.
inline JointSignProbabilityTable marginalize(const JointSignProbabilityTable& table, int site) {
  const int n = table.n_sites();
  if (n < 2 || site < 1 || site > n) throw ArgumentError("cannot marginalize that site");
  const SiteMask low = (SiteMask{1} << (site - 1)) - 1;
  std::vector<double> out(std::size_t{1} << (n - 1), 0.0);
  const auto& p = table.by_minus_mask();
  for (SiteMask m = 0; m < p.size(); ++m) {
    const SiteMask reduced = (m & low) | ((m >> 1) & ~low);
    out[reduced] += p[m];
  }
  return JointSignProbabilityTable(n - 1, std::move(out));
}

// Explicit route: builds rho (x) rho on 2N qubits (copy one first), the swap
// V_i of site i between the copies, and tr[prod_i (I + s_i V_i)/2 rho(x)rho].
inline double projector_expectation_oracle(const DensityOperator& rho, const SignVector& s) {
  const int n = rho.n_qubits();
  if (n > kOracleSiteCap) throw CapacityError("explicit two-copy oracle", n, kOracleSiteCap);
  if (s.size() != n) throw ArgumentError("sign vector length does not match the state");
  const Eigen::Index d = rho.dimension();
  const Eigen::Index dd = d * d;
  const Matrix two = detail::kron(rho.matrix(), rho.matrix());
  Matrix projector = Matrix::Identity(dd, dd);
  for (int site = 1; site <= n; ++site) {
    const Eigen::Index bit = Eigen::Index{1} << (n - site);
    Matrix swap = Matrix::Zero(dd, dd);
    for (Eigen::Index x = 0; x < d; ++x) {
      for (Eigen::Index y = 0; y < d; ++y) {
        Eigen::Index x2 = (x & ~bit) | (y & bit);
        Eigen::Index y2 = (y & ~bit) | (x & bit);
        swap(x2 * d + y2, x * d + y) = 1.0;
      }
    }
    const Matrix factor =
        (Matrix::Identity(dd, dd) + static_cast<double>(s[site]) * swap) / 2.0;
    projector = (projector * factor).eval();
  }
  return (projector * two).trace().real();
}

}  // namespace bsnet

#endif  // BSNET_BS_NETWORK_HPP
