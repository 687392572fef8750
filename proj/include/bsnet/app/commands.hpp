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

#ifndef BSNET_APP_COMMANDS_HPP
#define BSNET_APP_COMMANDS_HPP

// Figure data, lattice validation and the cat loss experiment, as pure
// functions returning CSV text or JSON documents.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bsnet/app/report.hpp"
#include "bsnet/app/state_spec.hpp"
#include "bsnet/bs_network.hpp"
#include "bsnet/lattice.hpp"
#include "bsnet/separability.hpp"
#include "bsnet/state_factory.hpp"

namespace bsnet::app {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitCapacity = 4,
  kExitInversion = 5,
  kExitIo = 6,
};

inline std::string fig2a_csv(int n_sites = 3, int points = 101, int qubit_cap = kDefaultQubitCap) {
  if (points < 2) throw ArgumentError("need at least 2 grid points");
  if (n_sites < 3) throw ArgumentError("fig2a needs N >= 3");
  check_qubit_cap(n_sites, qubit_cap);
  std::string out = "phi,V1,V2,V3\n";
  for (int k = 0; k < points; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / (points - 1);
    const auto v = fig2a_violations(phi, n_sites);
    out += format_double(phi) + "," + format_double(v.v1) + "," + format_double(v.v2) + "," +
           format_double(v.v3) + "\n";
  }
  return out;
}

// Columns Pi_<N-m> for each m: purity of the cat state after tracing out m sites.
inline std::string fig2b_csv(int n_sites = 300, const std::vector<int>& removed = {1, 7, 14, 20},
                             int points = 101) {
  if (points < 2) throw ArgumentError("need at least 2 grid points");
  if (n_sites < 2) throw ArgumentError("need at least 2 sites");
  if (removed.empty()) throw ArgumentError("need at least one m");
  std::string out = "epsilon";
  for (int m : removed) {
    if (m < 0 || m >= n_sites) throw ArgumentError("m must satisfy 0 <= m < N");
    out += ",Pi_" + std::to_string(n_sites - m);
  }
  out += "\n";
  for (int k = 0; k < points; ++k) {
    const double eps = static_cast<double>(k) / (points - 1);
    const double gamma = 1.0 - eps * eps;
    out += format_double(eps);
    for (int m : removed) {
      out += "," + format_double(cat_purity_closed_form<double>(n_sites, m, gamma));
    }
    out += "\n";
  }
  return out;
}

struct LatticeValidateOptions {
  double J = 1.0;
  double U = 0.0;
  int max_sites = 2;
  int end_to_end_states = 20;
  std::uint64_t seed = 1;
  std::size_t fock_cap = lattice::kDefaultFockCap;
};

inline constexpr double kEndToEndTolerance = 1e-9;
inline constexpr double kHomTolerance = 1e-10;

inline json lattice_validate(const LatticeValidateOptions& opt) {
  using namespace lattice;
  if (!(opt.J > 0.0)) throw ArgumentError("J must be positive");
  if (!std::isfinite(opt.U)) throw ArgumentError("U must be finite");
  if (opt.max_sites < 1) throw ArgumentError("need at least one site");
  bool all_passed = true;

  json bs = json::array();
  for (int n = 1; n <= opt.max_sites; ++n) {
    const double dim = FockBasis::dimension_for(4 * n, 2 * n);
    if (dim > static_cast<double>(opt.fock_cap)) {
      throw CapacityError("Fock basis dimension", dim, static_cast<double>(opt.fock_cap));
    }
    LatticeParams p{n, opt.J, opt.U, opt.U, opt.U, 0.0};
    const auto report = hopping_bs_check(p, default_bs_test_states(n));
    json overlaps = json::array();
    for (const auto& ov : report.overlaps) overlaps.push_back({ov.real(), ov.imag()});
    bs.push_back({{"n_sites", n},
                  {"fidelities", report.fidelities},
                  {"overlaps", overlaps},
                  {"min_fidelity", report.min_fidelity},
                  {"tolerance", report.tolerance},
                  {"passed", report.passed()}});
    all_passed = all_passed && report.passed();
  }

  const auto basis = FockBasis::create(4, 2, opt.fock_cap);
  const LatticeParams one{1, opt.J, opt.U, opt.U, opt.U, 0.0};
  const auto h = build_hamiltonians(one, *basis).total();
  auto p_diff = [&](const FockState& s) {
    const FockEnsemble ens{basis, {1.0}, {evolve(s, h, one.T_bs())}};
    return occupancy_probabilities(ens, 1).diff_mode;
  };
  const double hom_identical = p_diff(FockState::from_occupation(basis, pair_occupation(1, {0}, {0})));
  const double hom_singlet = p_diff(FockState::from_terms(
      basis, {{pair_occupation(1, {0}, {1}), 1.0}, {pair_occupation(1, {1}, {0}), -1.0}}));
  const bool hom_ok = std::abs(hom_identical) <= kHomTolerance &&
                      std::abs(hom_singlet - 1.0) <= kHomTolerance;
  all_passed = all_passed && hom_ok;

  json phases = json::array();
  const double u_phase = opt.U != 0.0 ? opt.U : 1.0;
  const auto phase_basis = FockBasis::create(4 * opt.max_sites, 2 * opt.max_sites, opt.fock_cap);
  for (double theta : {0.1, std::numbers::pi / 2.0, std::numbers::pi}) {
    const auto r = interaction_phase_check(u_phase, theta / u_phase, phase_basis);
    phases.push_back({{"theta", r.theta},
                      {"configurations", r.entries.size()},
                      {"max_error", r.max_error},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed()}});
    all_passed = all_passed && r.passed();
  }

  double max_dev = 0.0;
  for (int k = 0; k < opt.end_to_end_states; ++k) {
    const auto rho = random_state(1, 1 + k % 2, opt.seed + static_cast<std::uint64_t>(k));
    const auto occ = occupancy_probabilities(run_beam_splitter(rho, one, opt.fock_cap), 1);
    const auto expected = pair_projection_probabilities(rho);
    max_dev = std::max({max_dev, std::abs(occ.same_mode - expected.plus),
                        std::abs(occ.diff_mode - expected.minus)});
  }
  const bool e2e_ok = max_dev <= kEndToEndTolerance;
  all_passed = all_passed && e2e_ok;

  json sweep = json::array();
  const auto sweep_states = default_bs_test_states(1);
  for (const auto& e : interaction_degradation_sweep(LatticeParams::uniform(1, opt.J, 0.0),
                                                     {0.0, 0.01, 0.1, 1.0}, sweep_states)) {
    sweep.push_back({{"u_over_j", e.u_over_j}, {"min_fidelity", e.min_fidelity}});
  }

  return {{"tool", tool_info()},
          {"params", {{"J", opt.J}, {"U", opt.U}, {"T_bs", one.T_bs()}, {"max_sites", opt.max_sites}}},
          {"beam_splitter", bs},
          {"hom", {{"identical_pair_p_diff", hom_identical},
                   {"singlet_p_diff", hom_singlet},
                   {"tolerance", kHomTolerance},
                   {"passed", hom_ok}}},
          {"interaction_phase", phases},
          {"end_to_end", {{"states", opt.end_to_end_states},
                          {"max_deviation", max_dev},
                          {"tolerance", kEndToEndTolerance},
                          {"passed", e2e_ok}}},
          {"degradation_sweep", sweep},
          {"all_passed", all_passed},
          {"seeds", {opt.seed}}};
}

struct CatExperimentOptions {
  int n_sites = 300;
  double epsilon = 0.6;
  double survival = 0.95;
  int runs = 1000;
  std::uint64_t seed = 1;
};

struct CatExperimentResult {
  CatExperimentOptions options;
  std::map<int, int> loss_histogram;  // n -> runs
  double mean_loss = 0.0;
  double mean_purity = 0.0;
  double epsilon_estimate = 0.0;
  std::optional<double> plugin_estimate;  // inversion at the mean loss count
};

using BigReal = boost::multiprecision::cpp_bin_float_50;

// Each run samples the loss counts, records the exact purity of the remaining
// N - n sites, and the run-averaged purity is matched against the run-averaged
// model over gamma with the observed loss counts.
inline CatExperimentResult cat_experiment(const CatExperimentOptions& opt) {
  if (opt.n_sites < 2) throw ArgumentError("need at least 2 sites");
  if (!(opt.epsilon >= 0.0 && opt.epsilon <= 1.0)) throw ArgumentError("epsilon must lie in [0, 1]");
  if (!(opt.survival >= 0.0 && opt.survival <= 1.0)) {
    throw ArgumentError("survival must lie in [0, 1]");
  }
  if (opt.runs < 1) throw ArgumentError("need at least one run");
  CatExperimentResult res;
  res.options = opt;
  double loss_sum = 0.0;
  for (int r = 0; r < opt.runs; ++r) {
    const auto o = lattice::sample_loss(opt.n_sites, opt.survival,
                                        opt.seed + static_cast<std::uint64_t>(r));
    ++res.loss_histogram[o.n];
    loss_sum += o.n;
  }
  res.mean_loss = loss_sum / opt.runs;

  const int n_sites = opt.n_sites;
  const auto& hist = res.loss_histogram;
  const BigReal runs = opt.runs;
  auto model = [&](const BigReal& gamma) {
    BigReal acc = 0;
    for (const auto& [n, count] : hist) {
      acc += count * cat_purity_closed_form<BigReal>(n_sites, BigReal(n), gamma);
    }
    return BigReal(acc / runs);
  };
  const BigReal eps_true = opt.epsilon;
  const BigReal measured = model(1 - eps_true * eps_true);
  res.mean_purity = static_cast<double>(measured);

  bool informative = false;
  for (const auto& [n, count] : hist) informative = informative || (n > 0 && n < n_sites);
  if (!informative) {
    throw InversionError("no run lost between 1 and N-1 sites; purity carries no information",
                         1.0, 1.0);
  }
  const BigReal tol("1e-30");
  res.epsilon_estimate =
      static_cast<double>(invert_for_epsilon<BigReal>(model, measured, model(0), model(1), tol));
  if (res.mean_loss > 0.0 && res.mean_loss < n_sites) {
    try {
      res.plugin_estimate = static_cast<double>(
          estimate_epsilon<BigReal>(measured, n_sites, BigReal(res.mean_loss), tol));
    } catch (const InversionError&) {
    }
  }
  return res;
}

inline json to_json(const CatExperimentResult& r) {
  json hist = json::array();
  for (const auto& [n, count] : r.loss_histogram) hist.push_back({{"n", n}, {"runs", count}});
  const auto& o = r.options;
  return {{"tool", tool_info()},
          {"n_sites", o.n_sites},
          {"epsilon_true", o.epsilon},
          {"effective_size_true", effective_size(o.n_sites, o.epsilon)},
          {"survival", o.survival},
          {"runs", o.runs},
          {"loss_histogram", hist},
          {"mean_loss", r.mean_loss},
          {"mean_purity", r.mean_purity},
          {"estimator", "run_averaged_model"},
          {"epsilon_estimate", r.epsilon_estimate},
          {"abs_error", std::abs(r.epsilon_estimate - o.epsilon)},
          {"plugin_estimate_at_mean_loss",
           r.plugin_estimate ? json(*r.plugin_estimate) : json(nullptr)},
          {"seeds", {o.seed}}};
}

}  // namespace bsnet::app

#endif  // BSNET_APP_COMMANDS_HPP
