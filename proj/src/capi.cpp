#include "ecoop/ecoop.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "channel.hpp"
#include "demand_model.hpp"
#include "inventory.hpp"
#include "market_games.hpp"
#include "report.hpp"
#include "scenario.hpp"

struct ecoop_table {
  ecoop::ReportTable table;
};

namespace {

thread_local std::string g_last_error;

int set_error(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ECOOP_OK;
  } catch (const std::domain_error& e) {
    return set_error(ECOOP_EDOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(ECOOP_EINVAL, e.what());
  } catch (const std::out_of_range& e) {
    return set_error(ECOOP_EINVAL, e.what());
  } catch (const std::ios_base::failure& e) {
    return set_error(ECOOP_EIO, e.what());
  } catch (const std::exception& e) {
    return set_error(ECOOP_EFAIL, e.what());
  }
}

int require_out(const void* ptr) {
  if (!ptr) return set_error(ECOOP_EINVAL, "output pointer is null");
  return ECOOP_OK;
}

}  // namespace

extern "C" {

const char* ecoop_version(void) { return ecoop::kToolVersion; }

const char* ecoop_last_error(void) { return g_last_error.c_str(); }

int ecoop_poisson_pmf(double mu_tau, long k, double* out) {
  if (int rc = require_out(out)) return rc;
  return guarded([&] {
    if (!(mu_tau >= 0.0)) throw std::invalid_argument("mu_tau must be >= 0");
    const ecoop::TrafficProcess proc(mu_tau, 1.0, 1.0);
    *out = ecoop::packet_pmf(proc, k);
  });
}

int ecoop_achievable_rate(double bandwidth, double noise_psd, double power,
                          double* out) {
  if (int rc = require_out(out)) return rc;
  return guarded([&] {
    const ecoop::ChannelParams ch(bandwidth, noise_psd, 0.0);
    *out = ecoop::achievable_rate(ch, power);
  });
}

int ecoop_required_power(double bandwidth, double noise_psd, double rate_threshold,
                         double* out) {
  if (int rc = require_out(out)) return rc;
  return guarded([&] {
    const ecoop::ChannelParams ch(bandwidth, noise_psd, rate_threshold);
    *out = ecoop::required_power(ch);
  });
}

int ecoop_demander_efficiency(double bandwidth, double noise_psd, double rate_threshold,
                              double* out) {
  if (int rc = require_out(out)) return rc;
  return guarded([&] {
    const ecoop::ChannelParams ch(bandwidth, noise_psd, rate_threshold);
    *out = ecoop::demander_efficiency(ch);
  });
}

int ecoop_optimal_inventory(double mu_tau, double energy_per_packet, double holding,
                            double shortage, double purchase, double setup,
                            double* order_up_to, double* reorder_point,
                            double* min_cost) {
  return guarded([&] {
    const ecoop::TrafficProcess proc(mu_tau, 1.0, energy_per_packet);
    const ecoop::CostParams costs(holding, shortage, purchase, setup);
    const ecoop::InventoryPolicy policy =
        ecoop::solve_policy(ecoop::demand_distribution(proc), costs);
    if (order_up_to) *order_up_to = policy.order_up_to;
    if (reorder_point) *reorder_point = policy.reorder_point;
    if (min_cost) *min_cost = policy.expected_cost;
  });
}

int ecoop_market_equilibrium(const char* game, int suppliers, int leaders,
                             double demander_efficiency, double cost_coefficient,
                             double* total_volume, double* price) {
  return guarded([&] {
    if (!game) throw std::invalid_argument("game name is null");
    if (suppliers < 1) throw std::invalid_argument("suppliers must be >= 1");
    ecoop::MarketScenario scenario;
    scenario.demander_efficiency = demander_efficiency;
    scenario.game = ecoop::parse_game_kind(game);
    for (int i = 0; i < suppliers; ++i) {
      ecoop::SupplierProfile profile;
      profile.stored_energy = 1.0;
      profile.required_power = 0.0;
      profile.traffic_quantity = 1.0;
      profile.cost_weight = 0.0;
      profile.cost_override = cost_coefficient;
      scenario.suppliers.push_back(profile);
    }
    if (scenario.game == ecoop::GameKind::kStackelberg) {
      if (leaders < 1 || leaders >= suppliers) {
        throw std::invalid_argument("stackelberg needs 1 <= leaders < suppliers");
      }
      scenario.leaders = static_cast<std::size_t>(leaders);
      scenario.followers = static_cast<std::size_t>(suppliers - leaders);
    }
    scenario.convergence_tol = 1e-9;
    scenario.max_iterations = 10000;
    scenario.damping = 0.5;
    const ecoop::EquilibriumResult result = ecoop::solve(scenario);
    if (!result.converged) throw std::runtime_error("market solve did not converge");
    if (total_volume) *total_volume = result.total_volume;
    if (price) *price = result.price;
  });
}

int ecoop_run_preset(const char* name, ecoop_table** out) {
  if (int rc = require_out(out)) return rc;
  return guarded([&] {
    if (!name) throw std::invalid_argument("preset name is null");
    *out = new ecoop_table{ecoop::run_preset(name)};
  });
}

int ecoop_run_config(const char* path, const char* mode,
                     const unsigned long long* seed_override, ecoop_table** out) {
  if (int rc = require_out(out)) return rc;
  return guarded([&] {
    if (!path) throw std::invalid_argument("config path is null");
    ecoop::ScenarioConfig config = ecoop::load_config_file(path);
    if (seed_override) config.seed = *seed_override;
    const std::string kind = mode ? mode : "run";
    if (kind == "run") {
      *out = new ecoop_table{ecoop::run_config(config)};
    } else if (kind == "inventory") {
      *out = new ecoop_table{ecoop::run_inventory(config)};
    } else if (kind == "market") {
      *out = new ecoop_table{ecoop::run_market(config)};
    } else if (kind == "sim") {
      *out = new ecoop_table{ecoop::run_sim(config)};
    } else {
      throw std::invalid_argument("mode must be one of run, inventory, market, sim");
    }
  });
}

long ecoop_table_rows(const ecoop_table* table) {
  return table ? static_cast<long>(table->table.num_rows()) : -1;
}

long ecoop_table_cols(const ecoop_table* table) {
  return table ? static_cast<long>(table->table.num_columns()) : -1;
}

const char* ecoop_table_column_name(const ecoop_table* table, long col) {
  if (!table || col < 0 || col >= static_cast<long>(table->table.num_columns())) {
    return nullptr;
  }
  return table->table.column_name(static_cast<std::size_t>(col)).c_str();
}

int ecoop_table_value(const ecoop_table* table, long row, long col, double* out) {
  if (int rc = require_out(out)) return rc;
  if (!table) return set_error(ECOOP_EINVAL, "table handle is null");
  return guarded([&] {
    *out = table->table.value(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
  });
}

long ecoop_table_meta_count(const ecoop_table* table) {
  return table ? static_cast<long>(table->table.metadata().size()) : -1;
}

const char* ecoop_table_meta_key(const ecoop_table* table, long index) {
  if (!table || index < 0 || index >= static_cast<long>(table->table.metadata().size())) {
    return nullptr;
  }
  return table->table.metadata()[static_cast<std::size_t>(index)].first.c_str();
}

const char* ecoop_table_meta_value(const ecoop_table* table, long index) {
  if (!table || index < 0 || index >= static_cast<long>(table->table.metadata().size())) {
    return nullptr;
  }
  return table->table.metadata()[static_cast<std::size_t>(index)].second.c_str();
}

int ecoop_table_write_csv(const ecoop_table* table, const char* path, int precision) {
  if (!table) return set_error(ECOOP_EINVAL, "table handle is null");
  if (!path) return set_error(ECOOP_EINVAL, "output path is null");
  const int digits = precision > 0 ? precision : 12;
  return guarded([&] {
    if (std::string(path) == "-") {
      table->table.write_csv(std::cout, digits);
      std::cout.flush();
      return;
    }
    std::ofstream out(path);
    if (!out) {
      throw std::ios_base::failure(std::string("cannot open output file ") + path);
    }
    table->table.write_csv(out, digits);
    if (!out.good()) {
      throw std::ios_base::failure(std::string("write failed for ") + path);
    }
  });
}

void ecoop_table_free(ecoop_table* table) { delete table; }

}  // extern "C"
