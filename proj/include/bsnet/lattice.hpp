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

#ifndef BSNET_LATTICE_HPP
#define BSNET_LATTICE_HPP

// Second-quantized simulation of two rows (I, II) of N lattice sites, each
// site holding two-level bosons with internal states a and b:
//
//   H_BS  = -J sum_j (a_I^dag a_II + b_I^dag b_II + h.c.)
//   H_int = sum_{j,l} U_a/2 n_a(n_a-1) + U_b/2 n_b(n_b-1) + U_ab n_a n_b
//
// Evolving under H_BS for T = pi/(4J) maps creation operators as
//   a_I^dag -> (a_I^dag + i a_II^dag)/sqrt2,  a_II^dag -> (a_II^dag + i a_I^dag)/sqrt2,
// i.e. annihilators as a_I -> (a_I - i a_II)/sqrt2, with no extra global phase.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bsnet/bs_network.hpp"
#include "bsnet/errors.hpp"
#include "bsnet/qstate.hpp"

namespace bsnet::lattice {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Occupation = std::vector<std::uint8_t>;

inline constexpr std::size_t kDefaultFockCap = 200000;

enum class Row : int { I = 0, II = 1 };
enum class Internal : int { a = 0, b = 1 };

// Flat ordering: site-major, then row, then internal state.
struct ModeIndex {
  int site;  // 1-based
  Row row;
  Internal internal;

  int flat() const noexcept {
    return 4 * (site - 1) + 2 * static_cast<int>(row) + static_cast<int>(internal);
  }

  static ModeIndex from_flat(int mode) {
    if (mode < 0) throw ArgumentError("negative mode number");
    return {mode / 4 + 1, static_cast<Row>((mode / 2) % 2), static_cast<Internal>(mode % 2)};
  }

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

inline int mode(int site, Row row, Internal internal) {
  return ModeIndex{site, row, internal}.flat();
}

struct LatticeParams {
  int n_sites = 1;
  double J = 1.0;
  double U_a = 0.0;
  double U_b = 0.0;
  double U_ab = 0.0;
  double tau = 0.0;

  // Duration of the 50/50 beam splitter.
  double T_bs() const { return std::numbers::pi / (4.0 * J); }

  bool uniform_interaction() const noexcept { return U_a == U_b && U_b == U_ab; }

  // theta = U tau; defined only for U_a = U_b = U_ab.
  double theta() const {
    if (!uniform_interaction()) {
      throw ArgumentError("theta = U tau needs U_a = U_b = U_ab");
    }
    return U_a * tau;
  }

  static LatticeParams uniform(int n_sites, double J, double U, double tau = 0.0) {
    return {n_sites, J, U, U, U, tau};
  }
};

// All occupation vectors of `n_modes` modes holding `total_bosons`, in
// lexicographically descending order ((N,0,...,0) first).
class FockBasis {
 public:
  static std::shared_ptr<const FockBasis> create(int n_modes, int total_bosons,
                                                 std::size_t cap = kDefaultFockCap) {
    if (n_modes < 1 || total_bosons < 0 || total_bosons > 255) {
      throw ArgumentError("invalid Fock basis shape");
    }
    const double dim = dimension_for(n_modes, total_bosons);
    if (dim > static_cast<double>(cap)) {
      throw CapacityError("Fock basis dimension", dim, static_cast<double>(cap));
    }
    auto basis = std::shared_ptr<FockBasis>(new FockBasis(n_modes, total_bosons));
    Occupation occ(static_cast<std::size_t>(n_modes), 0);
    basis->enumerate(occ, 0, total_bosons);
    for (std::size_t i = 0; i < basis->states_.size(); ++i) {
      basis->index_.emplace(basis->states_[i], i);
    }
    return basis;
  }

  // C(total + modes - 1, total)
  static double dimension_for(int n_modes, int total_bosons) {
    double d = 1.0;
    for (int k = 1; k <= total_bosons; ++k) {
      d = d * static_cast<double>(n_modes - 1 + k) / static_cast<double>(k);
    }
    return std::round(d);
  }

  int n_modes() const noexcept { return n_modes_; }
  int total_bosons() const noexcept { return total_; }
  std::size_t dimension() const noexcept { return states_.size(); }
  const Occupation& occupation(std::size_t i) const { return states_.at(i); }

  std::optional<std::size_t> index_of(const Occupation& occ) const {
    auto it = index_.find(occ);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  FockBasis(int n_modes, int total) : n_modes_(n_modes), total_(total) {}

  void enumerate(Occupation& occ, int mode, int left) {
    if (mode == n_modes_ - 1) {
      occ[mode] = static_cast<std::uint8_t>(left);
      states_.push_back(occ);
      return;
    }
    for (int k = left; k >= 0; --k) {
      occ[mode] = static_cast<std::uint8_t>(k);
      enumerate(occ, mode + 1, left - k);
    }
    occ[mode] = 0;
  }

  int n_modes_;
  int total_;
  std::vector<Occupation> states_;
  std::map<Occupation, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

class FockState {
 public:
  FockState(BasisPtr basis, Vector amplitudes)
      : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
    if (!basis_) throw ArgumentError("null Fock basis");
    if (static_cast<std::size_t>(amps_.size()) != basis_->dimension()) {
      throw ArgumentError("amplitude count does not match the Fock basis");
    }
    const double dev = std::abs(amps_.squaredNorm() - 1.0);
    if (!(dev <= 1e-10)) {
      throw InvalidStateError("Fock state norm deviates from 1 by " + std::to_string(dev));
    }
  }

  static FockState from_occupation(BasisPtr basis, const Occupation& occ) {
    const auto idx = basis->index_of(occ);
    if (!idx) throw ArgumentError("occupation not in the basis");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
    v(static_cast<Eigen::Index>(*idx)) = 1.0;
    return FockState(std::move(basis), std::move(v));
  }

  // Normalized sum of coefficient * |occupation>.
  static FockState from_terms(BasisPtr basis,
                              const std::vector<std::pair<Occupation, Complex>>& terms) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
    for (const auto& [occ, c] : terms) {
      const auto idx = basis->index_of(occ);
      if (!idx) throw ArgumentError("occupation not in the basis");
      v(static_cast<Eigen::Index>(*idx)) += c;
    }
    const double norm = v.norm();
    if (!(norm > 0.0)) throw InvalidStateError("superposition vanishes");
    v /= norm;
    return FockState(std::move(basis), std::move(v));
  }

  const BasisPtr& basis() const noexcept { return basis_; }
  const Vector& amplitudes() const noexcept { return amps_; }
  Eigen::Index dimension() const noexcept { return amps_.size(); }

 private:
  BasisPtr basis_;
  Vector amps_;
};

inline Complex overlap(const FockState& bra, const FockState& ket) {
  if (bra.dimension() != ket.dimension()) {
    throw ArgumentError("states live in different Fock bases");
  }
  return bra.amplitudes().dot(ket.amplitudes());
}

inline double fidelity(const FockState& a, const FockState& b) { return std::norm(overlap(a, b)); }

struct LatticeHamiltonians {
  SparseMatrix hopping;      // H_BS
  SparseMatrix interaction;  // H_int, diagonal

  SparseMatrix total() const { return hopping + interaction; }
};

inline int sites_of(const FockBasis& basis) {
  if (basis.n_modes() % 4 != 0) throw ArgumentError("lattice bases need 4 modes per site");
  return basis.n_modes() / 4;
}

inline LatticeHamiltonians build_hamiltonians(const LatticeParams& params,
                                              const FockBasis& basis) {
  if (sites_of(basis) != params.n_sites) {
    throw ArgumentError("basis has " + std::to_string(sites_of(basis)) +
                        " sites, parameters have " + std::to_string(params.n_sites));
  }
  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  std::vector<Eigen::Triplet<Complex>> hop;
  std::vector<Eigen::Triplet<Complex>> diag;
  for (std::size_t col = 0; col < basis.dimension(); ++col) {
    const Occupation& occ = basis.occupation(col);
    double energy = 0.0;
    for (int site = 1; site <= params.n_sites; ++site) {
      for (Row row : {Row::I, Row::II}) {
        const double na = occ[mode(site, row, Internal::a)];
        const double nb = occ[mode(site, row, Internal::b)];
        energy += params.U_a * na * (na - 1.0) / 2.0 + params.U_b * nb * (nb - 1.0) / 2.0 +
                  params.U_ab * na * nb;
      }
      for (Internal s : {Internal::a, Internal::b}) {
        const int m1 = mode(site, Row::I, s);
        const int m2 = mode(site, Row::II, s);
        // -J (c_to^dag c_from) for both directions
        for (auto [to, from] : {std::pair{m1, m2}, std::pair{m2, m1}}) {
          if (occ[from] == 0) continue;
          Occupation next = occ;
          const double amp = std::sqrt(static_cast<double>(occ[from])) *
                             std::sqrt(static_cast<double>(occ[to]) + 1.0);
          next[from] -= 1;
          next[to] += 1;
          const auto row_idx = basis.index_of(next);
          hop.emplace_back(static_cast<Eigen::Index>(*row_idx),
                           static_cast<Eigen::Index>(col), Complex{-params.J * amp, 0.0});
        }
      }
    }
    if (energy != 0.0) {
      diag.emplace_back(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col),
                        Complex{energy, 0.0});
    }
  }
  LatticeHamiltonians h{SparseMatrix(dim, dim), SparseMatrix(dim, dim)};
  h.hopping.setFromTriplets(hop.begin(), hop.end());
  h.interaction.setFromTriplets(diag.begin(), diag.end());
  h.hopping.prune(Complex{0.0, 0.0});
  return h;
}

namespace detail {

// Basis indices reachable from `seeds` through nonzero off-diagonal entries.
inline std::vector<Eigen::Index> connected_block(const SparseMatrix& h,
                                                 std::vector<Eigen::Index> seeds) {
  std::vector<char> seen(static_cast<std::size_t>(h.cols()), 0);
  std::vector<Eigen::Index> out;
  for (auto s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      out.push_back(s);
    }
  }
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (SparseMatrix::InnerIterator it(h, out[head]); it; ++it) {
      const Eigen::Index r = it.row();
      if (it.value() != Complex{0.0, 0.0} && !seen[r]) {
        seen[r] = 1;
        out.push_back(r);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// exp(-i H t) |state>. H must be Hermitian. The dense eigendecomposition is
// restricted to the block of basis states connected to the support of
// `state`, which is invariant under H.
inline FockState evolve(const FockState& state, const SparseMatrix& h, double t) {
  if (h.rows() != state.dimension() || h.cols() != state.dimension()) {
    throw ArgumentError("Hamiltonian dimension does not match the state");
  }
  const SparseMatrix adj = h.adjoint();
  if ((h - adj).norm() > 1e-12 * std::max(1.0, h.norm())) {
    throw ArgumentError("Hamiltonian is not Hermitian");
  }
  std::vector<Eigen::Index> support;
  const Vector& psi = state.amplitudes();
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (psi(i) != Complex{0.0, 0.0}) support.push_back(i);
  }
  const auto block = detail::connected_block(h, support);
  const auto k = static_cast<Eigen::Index>(block.size());
  std::vector<Eigen::Index> position(static_cast<std::size_t>(h.cols()), -1);
  for (Eigen::Index i = 0; i < k; ++i) position[block[i]] = i;

  Matrix hb = Matrix::Zero(k, k);
  Vector pb(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    pb(c) = psi(block[c]);
    for (SparseMatrix::InnerIterator it(h, block[c]); it; ++it) {
      hb(position[it.row()], c) = it.value();
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hb);
  const Matrix& v = es.eigenvectors();
  Vector coeff = v.adjoint() * pb;
  for (Eigen::Index i = 0; i < k; ++i) coeff(i) *= std::polar(1.0, -es.eigenvalues()(i) * t);
  const Vector evolved = v * coeff;

  Vector out = Vector::Zero(psi.size());
  for (Eigen::Index i = 0; i < k; ++i) out(block[i]) = evolved(i);
  return FockState(state.basis(), std::move(out));
}

// Ideal 50/50 beam splitter applied mode by mode to the creation-operator
// polynomial of each basis state; independent of any Hamiltonian.
inline FockState ideal_beam_splitter(const FockState& state) {
  const FockBasis& basis = *state.basis();
  sites_of(basis);
  const double r = std::numbers::sqrt2 / 2.0;
  const Complex i_r{0.0, r};
  Vector out = Vector::Zero(state.dimension());
  for (std::size_t idx = 0; idx < basis.dimension(); ++idx) {
    const Complex c = state.amplitudes()(static_cast<Eigen::Index>(idx));
    if (c == Complex{0.0, 0.0}) continue;
    const Occupation& occ = basis.occupation(idx);
    std::map<Occupation, Complex> poly{{Occupation(occ.size(), 0), Complex{1.0, 0.0}}};
    for (int m = 0; m < basis.n_modes(); ++m) {
      const ModeIndex mi = ModeIndex::from_flat(m);
      const Row other = mi.row == Row::I ? Row::II : Row::I;
      const int partner = mode(mi.site, other, mi.internal);
      double factorial = 1.0;
      for (int rep = 0; rep < occ[m]; ++rep) {
        factorial *= rep + 1;
        std::map<Occupation, Complex> next;
        for (const auto& [cfg, coef] : poly) {
          for (auto [target, weight] : {std::pair{m, Complex{r, 0.0}}, std::pair{partner, i_r}}) {
            Occupation raised = cfg;
            raised[target] += 1;
            next[raised] += coef * weight * std::sqrt(static_cast<double>(raised[target]));
          }
        }
        poly = std::move(next);
      }
      if (occ[m] > 1) {
        for (auto& [cfg, coef] : poly) coef /= std::sqrt(factorial);
      }
    }
    for (const auto& [cfg, coef] : poly) {
      out(static_cast<Eigen::Index>(*basis.index_of(cfg))) += c * coef;
    }
  }
  return FockState(state.basis(), std::move(out));
}

struct BsCheckReport {
  std::vector<double> fidelities;
  std::vector<Complex> overlaps;  // <ideal|evolved>; 1 means no global phase
  double min_fidelity = 1.0;
  double tolerance = 1e-10;

  bool passed() const noexcept { return min_fidelity >= 1.0 - tolerance; }
};

// Evolves every test state under H_BS + H_int for T_bs and compares with the
// ideal beam-splitter map.
inline BsCheckReport hopping_bs_check(const LatticeParams& params,
                                      const std::vector<FockState>& test_states) {
  BsCheckReport report;
  std::map<const FockBasis*, SparseMatrix> cache;
  for (const auto& s : test_states) {
    auto it = cache.find(s.basis().get());
    if (it == cache.end()) {
      LatticeParams p = params;
      p.n_sites = sites_of(*s.basis());
      it = cache.emplace(s.basis().get(), build_hamiltonians(p, *s.basis()).total()).first;
    }
    const FockState evolved = evolve(s, it->second, params.T_bs());
    const Complex ov = overlap(ideal_beam_splitter(s), evolved);
    report.overlaps.push_back(ov);
    report.fidelities.push_back(std::norm(ov));
    report.min_fidelity = std::min(report.min_fidelity, std::norm(ov));
  }
  return report;
}

// Occupation with one boson in each row of every site: row I holds internal
// state bits_I[j], row II holds bits_II[j] (0 = a, 1 = b).
inline Occupation pair_occupation(int n_sites, const std::vector<int>& bits_one,
                                  const std::vector<int>& bits_two) {
  Occupation occ(static_cast<std::size_t>(4 * n_sites), 0);
  for (int j = 1; j <= n_sites; ++j) {
    occ[mode(j, Row::I, static_cast<Internal>(bits_one[j - 1]))] += 1;
    occ[mode(j, Row::II, static_cast<Internal>(bits_two[j - 1]))] += 1;
  }
  return occ;
}

// Ten states with two bosons per site: identical pairs, singlets, mixed
// internal states, doubly occupied site-rows and seeded random superpositions.
inline std::vector<FockState> default_bs_test_states(int n_sites, std::uint64_t seed = 7) {
  const auto basis = FockBasis::create(4 * n_sites, 2 * n_sites);
  std::vector<FockState> states;
  const std::vector<int> zeros(static_cast<std::size_t>(n_sites), 0);
  const std::vector<int> ones(static_cast<std::size_t>(n_sites), 1);
  states.push_back(FockState::from_occupation(basis, pair_occupation(n_sites, zeros, zeros)));
  states.push_back(FockState::from_occupation(basis, pair_occupation(n_sites, ones, ones)));
  states.push_back(FockState::from_occupation(basis, pair_occupation(n_sites, zeros, ones)));

  // Same-site products of per-site two-boson states.
  auto per_site_product = [&](auto&& site_terms) {
    std::vector<std::pair<Occupation, Complex>> terms{
        {Occupation(static_cast<std::size_t>(4 * n_sites), 0), Complex{1.0, 0.0}}};
    for (int j = 1; j <= n_sites; ++j) {
      std::vector<std::pair<Occupation, Complex>> next;
      for (const auto& [occ, c] : terms) {
        for (const auto& [modes, w] : site_terms(j)) {
          Occupation o = occ;
          for (int m : modes) o[m] += 1;
          next.emplace_back(o, c * w);
        }
      }
      terms = std::move(next);
    }
    return FockState::from_terms(basis, terms);
  };
  using SiteTerms = std::vector<std::pair<std::vector<int>, Complex>>;
  states.push_back(per_site_product([](int j) {
    return SiteTerms{{{mode(j, Row::I, Internal::a), mode(j, Row::II, Internal::b)}, 1.0},
                     {{mode(j, Row::II, Internal::a), mode(j, Row::I, Internal::b)}, -1.0}};
  }));
  states.push_back(per_site_product([](int j) {
    return SiteTerms{{{mode(j, Row::I, Internal::a), mode(j, Row::I, Internal::a)}, 1.0}};
  }));
  states.push_back(per_site_product([](int j) {
    return SiteTerms{{{mode(j, Row::I, Internal::a), mode(j, Row::I, Internal::b)}, 1.0}};
  }));
  states.push_back(per_site_product([](int j) {
    return SiteTerms{{{mode(j, Row::I, Internal::b), mode(j, Row::II, Internal::b)}, 1.0},
                     {{mode(j, Row::II, Internal::a), mode(j, Row::II, Internal::a)},
                      Complex{0.0, 0.5}}};
  }));

  // Random superpositions over configurations with two bosons on every site.
  std::vector<std::size_t> sector;
  for (std::size_t i = 0; i < basis->dimension(); ++i) {
    const Occupation& occ = basis->occupation(i);
    bool ok = true;
    for (int j = 0; j < n_sites && ok; ++j) {
      ok = occ[4 * j] + occ[4 * j + 1] + occ[4 * j + 2] + occ[4 * j + 3] == 2;
    }
    if (ok) sector.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (int k = 0; k < 3; ++k) {
    std::vector<std::pair<Occupation, Complex>> terms;
    for (std::size_t i : sector) {
      const double re = g(rng);
      const double im = g(rng);
      terms.emplace_back(basis->occupation(i), Complex{re, im});
    }
    states.push_back(FockState::from_terms(basis, terms));
  }
  return states;
}

struct SweepEntry {
  double u_over_j;
  double min_fidelity;
};

// Beam-splitter fidelity with U_a = U_b = U_ab = ratio * J switched on during
// the hopping pulse.
inline std::vector<SweepEntry> interaction_degradation_sweep(
    const LatticeParams& params, const std::vector<double>& ratios,
    const std::vector<FockState>& test_states) {
  std::vector<SweepEntry> out;
  for (double ratio : ratios) {
    LatticeParams p = LatticeParams::uniform(params.n_sites, params.J, ratio * params.J);
    out.push_back({ratio, hopping_bs_check(p, test_states).min_fidelity});
  }
  return out;
}

struct PhaseEntry {
  std::size_t basis_index;
  int pairs;              // sum over site-rows of n(n-1)/2
  double expected_phase;  // pairs * U tau, wrapped to [0, 2 pi)
  double measured_phase;  // -arg of the evolved amplitude, wrapped to [0, 2 pi)
  double error;           // |measured amplitude - e^{-i expected}|
};

struct PhaseCheckReport {
  double theta = 0.0;
  std::vector<PhaseEntry> entries;
  double max_error = 0.0;
  double tolerance = 1e-12;

  bool passed() const noexcept { return max_error <= tolerance; }
};

inline double wrap_phase(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  x = std::fmod(x, two_pi);
  if (x < 0.0) x += two_pi;
  if (two_pi - x < 1e-13) x = 0.0;
  return x;
}

// Evolves every basis configuration under H_int alone (U_a = U_b = U_ab = U)
// for tau and compares its phase with (number of on-site pairs) * U tau.
inline PhaseCheckReport interaction_phase_check(double U, double tau, BasisPtr basis) {
  const int n_sites = sites_of(*basis);
  const LatticeParams p = LatticeParams::uniform(n_sites, 1.0, U, tau);
  const SparseMatrix h_int = build_hamiltonians(p, *basis).interaction;
  PhaseCheckReport report;
  report.theta = p.theta();
  for (std::size_t i = 0; i < basis->dimension(); ++i) {
    const Occupation& occ = basis->occupation(i);
    int pairs = 0;
    for (int j = 1; j <= n_sites; ++j) {
      for (Row row : {Row::I, Row::II}) {
        const int n = occ[mode(j, row, Internal::a)] + occ[mode(j, row, Internal::b)];
        pairs += n * (n - 1) / 2;
      }
    }
    const FockState out = evolve(FockState::from_occupation(basis, occ), h_int, tau);
    const Complex amp = out.amplitudes()(static_cast<Eigen::Index>(i));
    const double expected = pairs * report.theta;
    PhaseEntry e{i, pairs, wrap_phase(expected), wrap_phase(-std::arg(amp)),
                 std::abs(amp - std::polar(1.0, -expected))};
    report.max_error = std::max(report.max_error, e.error);
    report.entries.push_back(e);
  }
  return report;
}

// Mixture of Fock states; weights sum to one.
struct FockEnsemble {
  BasisPtr basis;
  std::vector<double> weights;
  std::vector<FockState> members;
};

inline constexpr double kEigenweightCutoff = 1e-14;

// rho (x) rho on the two rows: row I carries copy one, row II copy two,
// internal state a = |0>, b = |1>, one boson per site per row. Members are
// products of eigenvectors of rho, weighted by eigenvalue products.
inline FockEnsemble embed_two_copies(const DensityOperator& rho_row,
                                     std::size_t fock_cap = kDefaultFockCap) {
  const int n = rho_row.n_qubits();
  FockEnsemble ens;
  ens.basis = FockBasis::create(4 * n, 2 * n, fock_cap);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_row.matrix());
  std::vector<std::pair<double, Vector>> eig;
  double kept = 0.0;
  for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
    const double lambda = es.eigenvalues()(k);
    if (lambda > kEigenweightCutoff) {
      eig.emplace_back(lambda, es.eigenvectors().col(k));
      kept += lambda;
    }
  }
  const Eigen::Index d = rho_row.dimension();
  std::vector<Eigen::Index> config_index(static_cast<std::size_t>(d * d));
  for (Eigen::Index x = 0; x < d; ++x) {
    for (Eigen::Index y = 0; y < d; ++y) {
      std::vector<int> bx(static_cast<std::size_t>(n)), by(static_cast<std::size_t>(n));
      for (int j = 1; j <= n; ++j) {
        bx[j - 1] = static_cast<int>((x >> (n - j)) & 1);
        by[j - 1] = static_cast<int>((y >> (n - j)) & 1);
      }
      config_index[x * d + y] =
          static_cast<Eigen::Index>(*ens.basis->index_of(pair_occupation(n, bx, by)));
    }
  }
  for (const auto& [l1, v1] : eig) {
    for (const auto& [l2, v2] : eig) {
      Vector amps = Vector::Zero(static_cast<Eigen::Index>(ens.basis->dimension()));
      for (Eigen::Index x = 0; x < d; ++x) {
        for (Eigen::Index y = 0; y < d; ++y) amps(config_index[x * d + y]) = v1(x) * v2(y);
      }
      ens.weights.push_back(l1 * l2 / (kept * kept));
      amps /= amps.norm();
      ens.members.emplace_back(ens.basis, std::move(amps));
    }
  }
  return ens;
}

inline FockEnsemble evolve(const FockEnsemble& ens, const SparseMatrix& h, double t) {
  FockEnsemble out{ens.basis, ens.weights, {}};
  out.members.reserve(ens.members.size());
  for (const auto& m : ens.members) out.members.push_back(evolve(m, h, t));
  return out;
}

// embed -> H_BS for T_bs (plus H_int if params carry interactions).
inline FockEnsemble run_beam_splitter(const DensityOperator& rho_row,
                                      const LatticeParams& params,
                                      std::size_t fock_cap = kDefaultFockCap) {
  auto ens = embed_two_copies(rho_row, fock_cap);
  LatticeParams p = params;
  p.n_sites = rho_row.n_qubits();
  return evolve(ens, build_hamiltonians(p, *ens.basis).total(), p.T_bs());
}

struct OccupancyProbabilities {
  double same_mode;  // both bosons of the site pair in one row
  double diff_mode;  // one boson in each row
};

inline constexpr double kSupportCutoff = 1e-24;

namespace detail {

inline void require_pair_at(const Occupation& occ, int site) {
  const int total = occ[mode(site, Row::I, Internal::a)] + occ[mode(site, Row::I, Internal::b)] +
                    occ[mode(site, Row::II, Internal::a)] + occ[mode(site, Row::II, Internal::b)];
  if (total != 2) {
    throw ArgumentError("site " + std::to_string(site) + " holds " + std::to_string(total) +
                        " bosons, expected 2");
  }
}

inline bool split_at(const Occupation& occ, int site) {
  return occ[mode(site, Row::I, Internal::a)] + occ[mode(site, Row::I, Internal::b)] == 1;
}

}  // namespace detail

inline OccupancyProbabilities occupancy_probabilities(const FockEnsemble& ens, int site) {
  const int n_sites = sites_of(*ens.basis);
  if (site < 1 || site > n_sites) throw ArgumentError("site out of range");
  double diff = 0.0;
  for (std::size_t k = 0; k < ens.members.size(); ++k) {
    const Vector& a = ens.members[k].amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double p = std::norm(a(i));
      if (p <= kSupportCutoff) continue;
      const Occupation& occ = ens.basis->occupation(static_cast<std::size_t>(i));
      detail::require_pair_at(occ, site);
      if (detail::split_at(occ, site)) diff += ens.weights[k] * p;
    }
  }
  return {1.0 - diff, diff};
}

// Joint table over all sites with "+" = same mode and "-" = split pair.
inline JointSignProbabilityTable joint_occupancy_probabilities(const FockEnsemble& ens) {
  const int n_sites = sites_of(*ens.basis);
  std::vector<double> table(std::size_t{1} << n_sites, 0.0);
  for (std::size_t k = 0; k < ens.members.size(); ++k) {
    const Vector& a = ens.members[k].amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double p = std::norm(a(i));
      if (p <= kSupportCutoff) continue;
      const Occupation& occ = ens.basis->occupation(static_cast<std::size_t>(i));
      SiteMask minus = 0;
      for (int j = 1; j <= n_sites; ++j) {
        detail::require_pair_at(occ, j);
        if (detail::split_at(occ, j)) minus |= SiteMask{1} << (j - 1);
      }
      table[minus] += ens.weights[k] * p;
    }
  }
  return JointSignProbabilityTable(n_sites, std::move(table));
}

struct LossOutcome {
  int m;        // losses in copy one
  int m_prime;  // losses in copy two
  int n;        // max(m, m_prime): site pairs that miss the beam splitter
};

// Independent binomial single-particle loss in the two copies.
inline LossOutcome sample_loss(int n_sites, double survival_prob, std::uint64_t seed) {
  if (n_sites < 0) throw ArgumentError("negative site count");
  if (!(survival_prob >= 0.0 && survival_prob <= 1.0)) {
    throw ArgumentError("survival probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::binomial_distribution<int> loss(n_sites, 1.0 - survival_prob);
  const int m = loss(rng);
  const int m_prime = loss(rng);
  return {m, m_prime, std::max(m, m_prime)};
}

}  // namespace bsnet::lattice

#endif  // BSNET_LATTICE_HPP
