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

#ifndef BSNET_QSTATE_HPP
#define BSNET_QSTATE_HPP

// Dense n-qubit states and density operators.
//
// Sites are labelled 1..n. Site 1 is the most significant bit of the
// amplitude index, so |x_1 x_2 ... x_n> sits at index sum_k x_k 2^(n-k).
// Subsets of sites are stored as bit masks where bit (k-1) marks site k;
// this mask convention is independent of the amplitude ordering.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bsnet/errors.hpp"

namespace bsnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SiteMask = std::uint32_t;

inline constexpr int kDefaultQubitCap = 14;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;

inline void check_qubit_cap(int n_qubits, int cap = kDefaultQubitCap) {
  if (n_qubits > cap) {
    throw CapacityError("qubit count exceeds cap", n_qubits, cap);
  }
}

// Sorted set of 1-based site labels.
class SubsetIndex {
 public:
  SubsetIndex(std::initializer_list<int> sites)
      : SubsetIndex(std::vector<int>(sites)) {}

  explicit SubsetIndex(std::vector<int> sites) : members_(std::move(sites)) {
    if (members_.empty()) {
      throw ArgumentError("subset must be nonempty");
    }
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) !=
        members_.end()) {
      throw ArgumentError("subset has repeated site labels");
    }
    if (members_.front() < 1 || members_.back() > 32) {
      throw ArgumentError("site labels must lie in 1..32");
    }
  }

  // The empty set; only meaningful as the full-trace entry (purity 1).
  static SubsetIndex full_trace_sentinel() { return SubsetIndex(); }

  static SubsetIndex from_mask(SiteMask mask) {
    SubsetIndex s;
    for (int k = 1; mask != 0; ++k, mask >>= 1) {
      if (mask & 1U) s.members_.push_back(k);
    }
    return s;
  }

  // {1, ..., n}
  static SubsetIndex range(int first, int last) {
    std::vector<int> v;
    for (int k = first; k <= last; ++k) v.push_back(k);
    return SubsetIndex(std::move(v));
  }

  const std::vector<int>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  int max_site() const noexcept { return members_.empty() ? 0 : members_.back(); }

  SiteMask mask() const noexcept {
    SiteMask m = 0;
    for (int k : members_) m |= SiteMask{1} << (k - 1);
    return m;
  }

  bool is_subset_of(const SubsetIndex& other) const noexcept {
    return (mask() & ~other.mask()) == 0;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(members_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;

 private:
  SubsetIndex() = default;
  std::vector<int> members_;
};

namespace detail {

inline int qubits_for_dimension(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n == 0) return -1;
  return n;
}

// Amplitude-index offsets contributed by each assignment of the sites in
// `mask`, enumerated with the lowest-labelled site as most significant bit.
inline std::vector<Eigen::Index> site_offsets(int n_qubits, SiteMask mask) {
  std::vector<int> sites;
  for (int k = 1; k <= n_qubits; ++k) {
    if (mask & (SiteMask{1} << (k - 1))) sites.push_back(k);
  }
  const int m = static_cast<int>(sites.size());
  std::vector<Eigen::Index> out(std::size_t{1} << m);
  for (std::size_t r = 0; r < out.size(); ++r) {
    Eigen::Index off = 0;
    for (int i = 0; i < m; ++i) {
      if ((r >> (m - 1 - i)) & 1U) off |= Eigen::Index{1} << (n_qubits - sites[i]);
    }
    out[r] = off;
  }
  return out;
}

inline SiteMask all_sites(int n_qubits) {
  return n_qubits >= 32 ? ~SiteMask{0} : (SiteMask{1} << n_qubits) - 1;
}

// Reduced matrix on the sites in `keep`; no validation.
inline Matrix reduce(const Matrix& rho, int n_qubits, SiteMask keep) {
  const auto kept = site_offsets(n_qubits, keep);
  const auto traced = site_offsets(n_qubits, all_sites(n_qubits) & ~keep);
  const auto dk = static_cast<Eigen::Index>(kept.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index c = 0; c < dk; ++c) {
    for (Eigen::Index r = 0; r < dk; ++r) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index t : traced) acc += rho(kept[r] + t, kept[c] + t);
      out(r, c) = acc;
    }
  }
  return out;
}

// Reshape of a pure state into (kept x traced) coefficients.
inline Matrix schmidt_matrix(const Vector& psi, int n_qubits, SiteMask keep) {
  const auto kept = site_offsets(n_qubits, keep);
  const auto traced = site_offsets(n_qubits, all_sites(n_qubits) & ~keep);
  Matrix m(static_cast<Eigen::Index>(kept.size()),
           static_cast<Eigen::Index>(traced.size()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      m(r, c) = psi(kept[r] + traced[c]);
    }
  }
  return m;
}

// tr((M M^dag)^2) computed on the smaller Gram matrix.
inline double gram_purity(const Matrix& m) {
  if (m.rows() <= m.cols()) {
    Matrix g = m * m.adjoint();
    return g.squaredNorm();
  }
  Matrix g = m.adjoint() * m;
  return g.squaredNorm();
}

}  // namespace detail

// Normalized state vector over 2^n amplitudes.
class PureState {
 public:
  // Throws InvalidStateError unless the norm is 1 within kNormTolerance.
  explicit PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
    n_ = detail::qubits_for_dimension(amps_.size());
    if (n_ < 1) {
      throw InvalidStateError("amplitude count must be a power of two >= 2");
    }
    const double dev = std::abs(amps_.squaredNorm() - 1.0);
    if (!(dev <= kNormTolerance)) {
      throw InvalidStateError("state norm deviates from 1 by " +
                              std::to_string(dev));
    }
  }

  // Scales to unit norm; throws on a zero vector.
  static PureState normalized(Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw InvalidStateError("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return PureState(std::move(amplitudes));
  }

  static PureState basis(int n_qubits, Eigen::Index index) {
    Vector v = Vector::Zero(Eigen::Index{1} << n_qubits);
    v(index) = 1.0;
    return PureState(std::move(v));
  }

  int n_qubits() const noexcept { return n_; }
  Eigen::Index dimension() const noexcept { return amps_.size(); }
  const Vector& amplitudes() const noexcept { return amps_; }
  Complex operator[](Eigen::Index i) const { return amps_(i); }

 private:
  int n_;
  Vector amps_;
};

struct ValidationReport {
  double hermiticity_deviation = 0.0;  // max |rho_ij - conj(rho_ji)|
  double trace_deviation = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;         // of the Hermitian part
  bool passed = false;
};

inline ValidationReport validate(const Matrix& m) {
  ValidationReport r;
  if (m.rows() != m.cols() || m.rows() == 0) {
    r.hermiticity_deviation = r.trace_deviation =
        std::numeric_limits<double>::infinity();
    r.min_eigenvalue = -std::numeric_limits<double>::infinity();
    return r;
  }
  r.hermiticity_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  r.trace_deviation = std::abs(m.trace() - Complex{1.0, 0.0});
  const Matrix herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.passed = r.hermiticity_deviation <= kHermiticityTolerance &&
             r.trace_deviation <= kTraceTolerance &&
             r.min_eigenvalue >= kEigenvalueFloor;
  return r;
}

// Hermitian, unit-trace, positive semidefinite operator on n qubits.
class DensityOperator {
 public:
  // Validates the matrix; throws InvalidStateError on failure.
  explicit DensityOperator(Matrix m) : m_(std::move(m)) {
    n_ = detail::qubits_for_dimension(m_.rows());
    if (n_ < 1 || m_.rows() != m_.cols()) {
      throw InvalidStateError("density matrix must be square with power-of-two dimension");
    }
    const auto report = validate(m_);
    if (!report.passed) {
      throw InvalidStateError(
          "not a density operator: hermiticity deviation " +
          std::to_string(report.hermiticity_deviation) + ", trace deviation " +
          std::to_string(report.trace_deviation) + ", min eigenvalue " +
          std::to_string(report.min_eigenvalue));
    }
  }

  // Caller guarantees every invariant; used by operations that preserve them.
  static DensityOperator unchecked(Matrix m) {
    DensityOperator d;
    d.n_ = detail::qubits_for_dimension(m.rows());
    d.m_ = std::move(m);
    return d;
  }

  static DensityOperator from_pure(const PureState& psi) {
    const Vector& v = psi.amplitudes();
    return unchecked(v * v.adjoint());
  }

  static DensityOperator maximally_mixed(int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    return unchecked(Matrix::Identity(d, d) / static_cast<double>(d));
  }

  int n_qubits() const noexcept { return n_; }
  Eigen::Index dimension() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  DensityOperator() = default;
  int n_ = 0;
  Matrix m_;
};

inline DensityOperator tensor(std::span<const DensityOperator> parts,
                              int qubit_cap = kDefaultQubitCap) {
  if (parts.empty()) throw ArgumentError("tensor of an empty list");
  int total = 0;
  for (const auto& p : parts) total += p.n_qubits();
  check_qubit_cap(total, qubit_cap);
  Matrix acc = parts.front().matrix();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Matrix& b = parts[i].matrix();
    Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (Eigen::Index r = 0; r < acc.rows(); ++r) {
      for (Eigen::Index c = 0; c < acc.cols(); ++c) {
        next.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = acc(r, c) * b;
      }
    }
    acc = std::move(next);
  }
  return DensityOperator::unchecked(std::move(acc));
}

inline DensityOperator tensor(std::initializer_list<DensityOperator> parts,
                              int qubit_cap = kDefaultQubitCap) {
  return tensor(std::span<const DensityOperator>(parts.begin(), parts.size()),
                qubit_cap);
}

inline PureState tensor(std::span<const PureState> parts,
                        int qubit_cap = kDefaultQubitCap) {
  if (parts.empty()) throw ArgumentError("tensor of an empty list");
  int total = 0;
  for (const auto& p : parts) total += p.n_qubits();
  check_qubit_cap(total, qubit_cap);
  Vector acc = parts.front().amplitudes();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Vector& b = parts[i].amplitudes();
    Vector next(acc.size() * b.size());
    for (Eigen::Index r = 0; r < acc.size(); ++r) {
      next.segment(r * b.size(), b.size()) = acc(r) * b;
    }
    acc = std::move(next);
  }
  return PureState::normalized(std::move(acc));
}

inline void check_subset(const SubsetIndex& keep, int n_qubits) {
  if (keep.empty()) {
    throw ArgumentError("partial trace needs a nonempty keep set");
  }
  if (keep.max_site() > n_qubits) {
    throw ArgumentError("site " + std::to_string(keep.max_site()) +
                        " outside 1.." + std::to_string(n_qubits));
  }
}

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     const SubsetIndex& keep) {
  check_subset(keep, rho.n_qubits());
  return DensityOperator::unchecked(
      detail::reduce(rho.matrix(), rho.n_qubits(), keep.mask()));
}

inline DensityOperator partial_trace(const PureState& psi,
                                     const SubsetIndex& keep) {
  check_subset(keep, psi.n_qubits());
  const Matrix m = detail::schmidt_matrix(psi.amplitudes(), psi.n_qubits(), keep.mask());
  return DensityOperator::unchecked(m * m.adjoint());
}

// tr(rho^2); equals the squared Frobenius norm for Hermitian rho.
inline double purity(const DensityOperator& rho) {
  return rho.matrix().squaredNorm();
}

// Seeded Haar-distributed pure state.
inline PureState random_pure_state(int n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vector v(Eigen::Index{1} << n_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex{re, im};
  }
  return PureState::normalized(std::move(v));
}

// Rank-r state obtained by tracing an r-dimensional ancilla off a Haar pure
// state on the system+ancilla.
inline DensityOperator random_state(int n_qubits, int rank, std::uint64_t seed,
                                    int qubit_cap = kDefaultQubitCap) {
  if (n_qubits < 1) throw ArgumentError("n_qubits must be positive");
  check_qubit_cap(n_qubits, qubit_cap);
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  if (rank < 1 || rank > d) {
    throw ArgumentError("rank must lie in 1.." + std::to_string(d));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(d, rank);
  for (Eigen::Index c = 0; c < rank; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      const double re = g(rng);
      const double im = g(rng);
      m(r, c) = Complex{re, im};
    }
  }
  m /= m.norm();
  const Matrix gram = m * m.adjoint();
  Matrix rho = (gram + gram.adjoint()) / 2.0;
  rho /= rho.trace().real();
  return DensityOperator::unchecked(std::move(rho));
}

}  // namespace bsnet

#endif  // BSNET_QSTATE_HPP
