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

// bsnet command-line front end.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bsnet/app/commands.hpp"
#include "bsnet/app/report.hpp"
#include "bsnet/app/state_spec.hpp"

namespace app = bsnet::app;

namespace {

void write_json(const std::string& path, const app::json& doc) {
  app::write_text_file(path, doc.dump(2) + "\n");
}

int report(const char* kind, const std::exception& e, int code) {
  std::fprintf(stderr, "bsnet: %s: %s\n", kind, e.what());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Entanglement detection through two-copy beam-splitter networks"};
  cli.set_version_flag("--version", std::string(BSNET_VERSION));
  cli.require_subcommand(1);

  int qubit_cap = bsnet::kDefaultQubitCap;
  std::size_t fock_cap = bsnet::lattice::kDefaultFockCap;
  cli.add_option("--qubit-cap", qubit_cap, "Largest qubit count accepted")
      ->capture_default_str();
  cli.add_option("--fock-cap", fock_cap, "Largest Fock basis dimension accepted")
      ->capture_default_str();

  std::string out;

  auto* probe = cli.add_subcommand("probe", "Run the purity-chain test on a state spec");
  std::string spec_path;
  std::optional<std::string> chains;
  double threshold = bsnet::kViolationThreshold;
  probe->add_option("--spec", spec_path, "State spec file")->required();
  probe->add_option("--out", out, "Output JSON")->required();
  probe->add_option("--chains", chains, "Chains, e.g. 1,2,3>1,2>1;1,2,3>2,3>3");
  probe->add_option("--threshold", threshold, "Violation threshold")->capture_default_str();

  auto* fig2a = cli.add_subcommand("fig2a", "Chain violations of the cluster family over phi");
  int fig2a_n = 3;
  int fig2a_points = 101;
  fig2a->add_option("--n", fig2a_n, "Sites")->capture_default_str();
  fig2a->add_option("--points", fig2a_points, "Grid points on [0, 2 pi]")->capture_default_str();
  fig2a->add_option("--out", out, "Output CSV")->required();

  auto* fig2b = cli.add_subcommand("fig2b", "Reduced cat-state purity over epsilon");
  int fig2b_n = 300;
  std::vector<int> fig2b_m{1, 7, 14, 20};
  int fig2b_points = 101;
  fig2b->add_option("--n", fig2b_n, "Sites")->capture_default_str();
  fig2b->add_option("--m", fig2b_m, "Removed-site counts")->delimiter(',')->capture_default_str();
  fig2b->add_option("--points", fig2b_points, "Grid points on [0, 1]")->capture_default_str();
  fig2b->add_option("--out", out, "Output CSV")->required();

  auto* lat = cli.add_subcommand("lattice-validate", "Validate the lattice beam splitter");
  app::LatticeValidateOptions lat_opt;
  lat->add_option("--j", lat_opt.J, "Hopping J")->capture_default_str();
  lat->add_option("--u", lat_opt.U, "On-site interaction U during the pulse")
      ->capture_default_str();
  lat->add_option("--sites", lat_opt.max_sites, "Largest site count checked")
      ->capture_default_str();
  lat->add_option("--seed", lat_opt.seed, "Seed for random test states")->capture_default_str();
  lat->add_option("--out", out, "Output JSON")->required();

  auto* cat = cli.add_subcommand("cat-experiment", "Estimate epsilon from lossy cat runs");
  app::CatExperimentOptions cat_opt;
  cat->add_option("--n", cat_opt.n_sites, "Sites")->capture_default_str();
  cat->add_option("--epsilon", cat_opt.epsilon, "True epsilon")->capture_default_str();
  cat->add_option("--survival", cat_opt.survival, "Per-particle survival probability")
      ->capture_default_str();
  cat->add_option("--runs", cat_opt.runs, "Number of runs")->capture_default_str();
  cat->add_option("--seed", cat_opt.seed, "Base seed")->capture_default_str();
  cat->add_option("--out", out, "Output JSON")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kExitOk : app::kExitUsage;
  }

  try {
    if (*probe) {
      const auto spec = app::load_state_spec(spec_path, qubit_cap);
      const auto r = app::probe(spec, chains, threshold);
      write_json(out, app::to_json(r));
      std::printf("%s\n", r.verdict().c_str());
    } else if (*fig2a) {
      app::write_text_file(out, app::fig2a_csv(fig2a_n, fig2a_points, qubit_cap));
    } else if (*fig2b) {
      app::write_text_file(out, app::fig2b_csv(fig2b_n, fig2b_m, fig2b_points));
    } else if (*lat) {
      lat_opt.fock_cap = fock_cap;
      const auto doc = app::lattice_validate(lat_opt);
      write_json(out, doc);
      std::printf("all_passed=%s\n", doc["all_passed"].get<bool>() ? "true" : "false");
    } else if (*cat) {
      const auto r = app::cat_experiment(cat_opt);
      write_json(out, app::to_json(r));
      std::printf("epsilon_estimate=%.17g\n", r.epsilon_estimate);
    }
  } catch (const bsnet::ParseError& e) {
    return report("parse error", e, app::kExitParse);
  } catch (const bsnet::CapacityError& e) {
    return report("capacity error", e, app::kExitCapacity);
  } catch (const bsnet::InversionError& e) {
    return report("inversion error", e, app::kExitInversion);
  } catch (const app::IoError& e) {
    return report("i/o error", e, app::kExitIo);
  } catch (const bsnet::ArgumentError& e) {
    return report("invalid argument", e, app::kExitUsage);
  } catch (const std::exception& e) {
    return report("error", e, app::kExitFailure);
  }
  return app::kExitOk;
}
