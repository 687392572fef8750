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

#ifndef BSNET_STATE_FACTORY_HPP
#define BSNET_STATE_FACTORY_HPP

// Benchmark states: linear cluster states, the phase-interpolated cluster
// family, GHZ states and macroscopic cat states, plus the closed-form purity
// of reduced cat states and its inversion for the distinctness parameter.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bsnet/errors.hpp"
#include "bsnet/qstate.hpp"

namespace bsnet {

inline void check_site_count(int n_sites, int qubit_cap) {
  if (n_sites < 2) throw ArgumentError("need at least 2 sites");
  check_qubit_cap(n_sites, qubit_cap);
}

// Open-chain 1D cluster: CZ between neighbours applied to |+>^N.
inline PureState linear_cluster(int n_sites, int qubit_cap = kDefaultQubitCap) {
  check_site_count(n_sites, qubit_cap);
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Vector v = Vector::Constant(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
  for (int k = 1; k < n_sites; ++k) {
    const Eigen::Index bit_k = Eigen::Index{1} << (n_sites - k);
    const Eigen::Index bit_next = Eigen::Index{1} << (n_sites - k - 1);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((i & bit_k) && (i & bit_next)) v(i) = -v(i);
    }
  }
  return PureState(std::move(v));
}

struct ClusterFamilySpec {
  int n_sites = 3;
  double phi = 0.0;  // radians, [0, 2 pi]
};

// ((1 + e^{i phi})/2)|0...0> + ((1 - e^{i phi})/2)|C>, renormalized: the
// two branches overlap by +-2^{-N/2}, so the bare sum is not unit norm.
inline PureState cluster_family_state(const ClusterFamilySpec& spec,
                                      int qubit_cap = kDefaultQubitCap) {
  check_site_count(spec.n_sites, qubit_cap);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!(spec.phi >= -1e-9 && spec.phi <= two_pi + 1e-9)) {
    throw ArgumentError("phi must lie in [0, 2 pi]");
  }
  const Complex e = std::polar(1.0, spec.phi);
  const Complex c_zero = (1.0 + e) / 2.0;
  const Complex c_cluster = (1.0 - e) / 2.0;
  Vector v = c_cluster * linear_cluster(spec.n_sites, qubit_cap).amplitudes();
  v(0) += c_zero;
  return PureState::normalized(std::move(v));
}

inline PureState ghz(int n_sites, int qubit_cap = kDefaultQubitCap) {
  check_site_count(n_sites, qubit_cap);
  Vector v = Vector::Zero(Eigen::Index{1} << n_sites);
  v(0) = v(v.size() - 1) = 1.0 / std::numbers::sqrt2;
  return PureState(std::move(v));
}

// cos(theta/2)|0> + e^{i azimuth} sin(theta/2)|1>
inline PureState bloch_state(double theta, double azimuth) {
  Vector v(2);
  v << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), azimuth);
  return PureState::normalized(std::move(v));
}

inline PureState product_state(std::span<const PureState> singles,
                               int qubit_cap = kDefaultQubitCap) {
  for (const auto& s : singles) {
    if (s.n_qubits() != 1) throw ArgumentError("product factors must be single-qubit");
  }
  return tensor(singles, qubit_cap);
}

struct CatSpec {
  int n_sites;
  PureState phi1;
  PureState phi2;
  Complex overlap;  // <phi1|phi2>
  double gamma;     // |overlap|^2
  double epsilon;   // sqrt(1 - gamma)
  double K;         // 2 + 2 Re(overlap^N)
  double S;         // effective size N epsilon^2
};

struct CatState {
  PureState state;
  CatSpec spec;
};

inline double effective_size(int n_sites, double epsilon) {
  return n_sites * epsilon * epsilon;
}

// (|phi1>^N + |phi2>^N) / sqrt(K)
inline CatState cat_state(int n_sites, const PureState& phi1, const PureState& phi2,
                          int qubit_cap = kDefaultQubitCap) {
  check_site_count(n_sites, qubit_cap);
  if (phi1.n_qubits() != 1 || phi2.n_qubits() != 1) {
    throw ArgumentError("cat branches must be single-qubit states");
  }
  const Complex overlap = phi1.amplitudes().dot(phi2.amplitudes());
  const double K = 2.0 + 2.0 * std::pow(overlap, n_sites).real();
  if (!(K > 1e-12)) {
    throw DegenerateSuperpositionError(
        "branches cancel: K = " + std::to_string(K));
  }
  const std::vector<PureState> a(static_cast<std::size_t>(n_sites), phi1);
  const std::vector<PureState> b(static_cast<std::size_t>(n_sites), phi2);
  Vector v = tensor(std::span<const PureState>(a), qubit_cap).amplitudes() +
             tensor(std::span<const PureState>(b), qubit_cap).amplitudes();
  v /= std::sqrt(K);
  const double gamma = std::min(1.0, std::norm(overlap));
  const double epsilon = std::sqrt(1.0 - gamma);
  return CatState{PureState::normalized(std::move(v)),
                  CatSpec{n_sites, phi1, phi2, overlap, gamma, epsilon, K,
                          effective_size(n_sites, epsilon)}};
}

namespace detail {

template <class Real>
Real power(const Real& base, const Real& exponent) {
  using std::pow;
  if (exponent == 0) return Real(1);
  if (base == 0) return Real(0);
  return pow(base, exponent);
}

// Smallest-gamma bisection for an increasing g on [0, 1]; ties move left.
template <class Real, class Fn>
Real bisect_increasing(Fn&& g, const Real& target, const Real& tolerance) {
  Real lo(0), hi(1);
  while (hi - lo > tolerance) {
    const Real mid = (lo + hi) / 2;
    if (g(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace detail

// Purity of a cat state with m of its N sites traced out, for real
// nonnegative overlap sqrt(gamma):
//   (1 + g^m + g^N + 4 g^{N/2} + g^{N-m}) / (2 (1 + g^{N/2})^2).
// Real may be a multiprecision type; m may be fractional (mean loss counts).
template <class Real = double>
Real cat_purity_closed_form(int n_sites, const Real& m, const Real& gamma) {
  if (n_sites < 1) throw ArgumentError("N must be positive");
  if (!(m >= 0 && m <= n_sites)) throw ArgumentError("m must lie in [0, N]");
  if (!(gamma >= 0 && gamma <= 1)) throw ArgumentError("gamma must lie in [0, 1]");
  const Real n = n_sites;
  const Real half = detail::power(gamma, Real(n / 2));
  const Real numer = 1 + detail::power(gamma, m) + detail::power(gamma, n) +
                     4 * half + detail::power(gamma, Real(n - m));
  const Real denom = 2 * (1 + half) * (1 + half);
  return numer / denom;
}

inline constexpr double kPurityBandSlack = 1e-9;

// Finds gamma with f(gamma) = target for an increasing f with f(0) = lo_value
// and f(1) = hi_value, and returns epsilon = sqrt(1 - gamma).
template <class Real, class Fn>
Real invert_for_epsilon(Fn&& f, const Real& target, const Real& lo_value,
                        const Real& hi_value, const Real& gamma_tolerance) {
  using std::sqrt;
  if (target < lo_value - kPurityBandSlack || target > hi_value + kPurityBandSlack) {
    throw InversionError("purity " + std::to_string(static_cast<double>(target)) +
                             " has no preimage",
                         static_cast<double>(lo_value), static_cast<double>(hi_value));
  }
  if (target >= hi_value) return Real(0);
  if (target <= lo_value) return Real(1);
  const Real gamma = detail::bisect_increasing<Real>(f, target, gamma_tolerance);
  return sqrt(1 - gamma);
}

// Inverts cat_purity_closed_form(N, n, 1 - eps^2) = purity for eps in [0, 1].
template <class Real = double>
Real estimate_epsilon(const Real& purity_measured, int n_sites, const Real& removed,
                      const Real& gamma_tolerance = Real(1e-12)) {
  if (!(removed > 0 && removed < n_sites)) {
    throw ArgumentError("removed-site count must satisfy 0 < n < N");
  }
  auto f = [&](const Real& g) { return cat_purity_closed_form<Real>(n_sites, removed, g); };
  return invert_for_epsilon<Real>(f, purity_measured, f(Real(0)), f(Real(1)),
                                  gamma_tolerance);
}

inline double estimate_epsilon(double purity_measured, int n_sites, int removed) {
  return estimate_epsilon<double>(purity_measured, n_sites, static_cast<double>(removed));
}

inline bool has_real_nonnegative_overlap(const CatSpec& spec) {
  return std::abs(spec.overlap.imag()) <= 1e-15 && spec.overlap.real() >= 0.0;
}

// Purity after tracing out the last m sites. The closed form holds only for a
// real nonnegative overlap; any other overlap goes through the partial trace.
inline double cat_purity(const CatState& cat, int m) {
  const int n = cat.spec.n_sites;
  if (m < 0 || m > n) throw ArgumentError("m must lie in 0..N");
  if (has_real_nonnegative_overlap(cat.spec)) {
    return cat_purity_closed_form<double>(n, m, cat.spec.gamma);
  }
  if (m == n) return 1.0;
  return purity(partial_trace(cat.state, SubsetIndex::range(1, n - m)));
}

}  // namespace bsnet

#endif  // BSNET_STATE_FACTORY_HPP
