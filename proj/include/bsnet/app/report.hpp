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

#ifndef BSNET_APP_REPORT_HPP
#define BSNET_APP_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsnet/app/state_spec.hpp"
#include "bsnet/bs_network.hpp"
#include "bsnet/separability.hpp"
#include "json.hpp"

#ifndef BSNET_VERSION
#define BSNET_VERSION "0.1.0"
#endif

namespace bsnet::app {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "bsnet";
inline constexpr const char* kVerdictEntangled = "entangled_detected";
inline constexpr const char* kVerdictNone = "no_violation";

inline json tool_info() { return {{"name", kToolName}, {"version", BSNET_VERSION}}; }

struct RunReport {
  std::string kind;
  int n_sites;
  std::vector<std::pair<std::string, std::string>> fields;
  std::string spec_text;
  SubsetPurityMap purities;
  JointSignProbabilityTable table;
  std::vector<ChainReport> chains;
  double threshold;
  std::vector<std::uint64_t> seeds;

  bool entangled() const {
    for (const auto& c : chains) {
      if (c.entangled()) return true;
    }
    return false;
  }
  std::string verdict() const { return entangled() ? kVerdictEntangled : kVerdictNone; }
};

inline RunReport probe(const StateSpec& spec, const std::optional<std::string>& chains_text,
                       double threshold = kViolationThreshold) {
  if (!(threshold >= 0.0)) throw ArgumentError("threshold must be nonnegative");
  const auto chains = chains_text ? parse_chains(*chains_text, spec.n_sites)
                                  : default_chains(spec.n_sites);
  auto purities = std::visit([](const auto& s) { return all_subset_purities(s); }, spec.state);
  auto table = std::visit([](const auto& s) { return joint_sign_probabilities(s); }, spec.state);
  std::vector<ChainReport> reports;
  reports.reserve(chains.size());
  for (const auto& c : chains) reports.push_back(check_chain(purities, c, threshold));
  return RunReport{spec.kind,        spec.n_sites,      spec.fields,
                   spec.text,        std::move(purities), std::move(table),
                   std::move(reports), threshold,        {}};
}

inline json chain_to_json(const ChainReport& c) {
  json subsets = json::array();
  for (const auto& s : c.chain) subsets.push_back(s.to_string());
  json links = json::array();
  for (const auto& l : c.links) {
    links.push_back({{"larger", l.larger.to_string()},
                     {"smaller", l.smaller.to_string()},
                     {"violation", l.violation},
                     {"violated", l.violated}});
  }
  return {{"chain", subsets}, {"links", links}, {"entangled", c.entangled()}};
}

inline json to_json(const RunReport& r) {
  json fields = json::object();
  for (const auto& [k, v] : r.fields) fields[k] = v;
  json purities = json::array();
  const auto full = (SiteMask{1} << r.n_sites);
  for (SiteMask m = 1; m < full; ++m) {
    purities.push_back({{"subset", SubsetIndex::from_mask(m).to_string()},
                        {"purity", r.purities.at_mask(m)}});
  }
  json table = json::array();
  for (SiteMask m = 0; m < full; ++m) {
    table.push_back({{"signs", SignVector(r.n_sites, m).to_string()},
                     {"probability", r.table.by_minus_mask()[m]}});
  }
  json chains = json::array();
  for (const auto& c : r.chains) chains.push_back(chain_to_json(c));
  return {{"tool", tool_info()},
          {"input", {{"kind", r.kind}, {"n_sites", r.n_sites}, {"fields", fields},
                     {"source", r.spec_text}}},
          {"subset_purities", purities},
          {"joint_sign_probabilities", table},
          {"threshold", r.threshold},
          {"chains", chains},
          {"verdict", r.verdict()},
          {"seeds", r.seeds}};
}

}  // namespace bsnet::app

#endif  // BSNET_APP_REPORT_HPP
