#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coop_sim.hpp"
#include "market_games.hpp"
#include "report.hpp"

namespace ecoop {

inline constexpr const char* kToolVersion = "1.0.0";

// Flat view of the JSON scenario document. Sections: traffic, costs, channel,
// market, sim, output; a top-level "preset" key delegates to the named preset.
struct ScenarioConfig {
  // traffic
  double mu = 5.0;
  double tau = 1.0;
  double energy_per_packet = 1.0;
  double mass_tol = 1e-12;
  // costs
  double holding = 4.0;
  double shortage = 3.0;
  double purchase = 0.0;
  double setup = 0.0;
  double existing_stock = 0.0;
  // channel (SI units)
  double rate_threshold = 40e3;
  double bandwidth = 10e6;
  double noise_psd = 1e-8;
  // market
  double k_d_override = 0.0;  // 0 => derive k_d from the channel section
  double cost_weight = 0.5;
  double supplier_traffic = 15.0;
  double supplier_required_power = 120.0;  // uW
  double supplier_stored = 160.0;          // uW-slots
  std::optional<double> cost_coefficient;
  std::string game = "cournot";
  int suppliers = 4;
  int leaders = 1;
  int followers = 3;
  std::vector<double> histories;
  double convergence_tol = 1e-6;
  int stability_rounds = 3;
  int max_iterations = 1000;
  double damping = 1.0;
  // sim
  int slots = 0;
  std::uint64_t seed = 1;
  int node_count = 10;
  double transfer_efficiency = 0.5;
  double harvest = 5.0;       // energy units per slot for node 0
  double harvest_step = 0.0;  // per-node increment
  double initial_stored = 0.0;
  double stored_step = 0.0;
  double mu_step = 0.0;
  // output
  int precision = 12;
  // delegation
  std::string preset;

  void validate() const;
};

// Parses and validates a JSON document; error messages name the offending
// field and the violated constraint.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config_file(const std::string& path);

GameKind parse_game_kind(const std::string& name);
double config_demander_efficiency(const ScenarioConfig& config);
MarketScenario to_market_scenario(const ScenarioConfig& config);

const std::vector<std::string>& preset_names();
ReportTable run_preset(const std::string& name);

// Subcommand entry points; each returns the table the CLI serializes.
ReportTable run_inventory(const ScenarioConfig& config);
ReportTable run_market(const ScenarioConfig& config);
ReportTable run_sim(const ScenarioConfig& config);
// End-to-end: inventory, classification-style market solve, then the seeded
// simulation when slots > 0.
ReportTable run_config(const ScenarioConfig& config);

}  // namespace ecoop
