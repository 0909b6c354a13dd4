#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "channel.hpp"
#include "demand_model.hpp"
#include "inventory.hpp"
#include "market_games.hpp"

namespace ecoop {

// One sensor node. Energy is measured in uW-slots (one slot is one second,
// so power and energy numerics coincide). The inventory policy and demand law
// are cached and recomputed whenever the traffic process changes.
class NodeState {
 public:
  NodeState(int id, double stored_energy, double harvest_rate,
            const TrafficProcess& traffic, const ChannelParams& channel,
            const CostParams& costs);

  int id() const { return id_; }
  double stored_energy() const { return stored_; }
  double harvest_rate() const { return harvest_rate_; }
  double transfer_ledger() const { return transfer_ledger_; }
  double last_offer() const { return last_offer_; }
  const TrafficProcess& traffic() const { return traffic_; }
  const ChannelParams& channel() const { return channel_; }
  const CostParams& costs() const { return costs_; }
  const DemandDistribution& demand() const { return demand_; }
  const InventoryPolicy& policy() const { return policy_; }

  // Surplus relative to the optimal inventory amount; negative is a deficit.
  double surplus() const { return stored_ - policy_.order_up_to; }

  void set_traffic(const TrafficProcess& traffic);

 private:
  friend class Simulator;

  int id_;
  double stored_;
  double harvest_rate_;
  TrafficProcess traffic_;
  ChannelParams channel_;
  CostParams costs_;
  DemandDistribution demand_;
  InventoryPolicy policy_;
  double transfer_ledger_ = 0.0;  // cumulative, positive = energy received
  double last_offer_ = 0.0;       // seed for the next market round
};

struct Classification {
  std::vector<std::size_t> suppliers;  // indices with surplus > 0
  std::vector<std::size_t> demanders;  // indices with deficit > 0
  std::vector<std::size_t> idle;       // stored exactly at the optimum
};

Classification classify_nodes(const std::vector<NodeState>& nodes);

struct CooperationRound {
  int demander_id = -1;
  double requested_energy = 0.0;
  std::vector<int> supplier_ids;
  EquilibriumResult equilibrium;
  double delivered_energy = 0.0;
  bool executed = false;
  std::string diagnostic;
};

struct SimConfig {
  std::uint64_t seed = 1;
  double transfer_efficiency = 0.5;  // fraction of sold energy delivered
  GameKind game = GameKind::kCournot;
  double demander_efficiency_override = 0.0;  // <= 0: derive from the demander's channel
  double cost_weight = 0.5;                   // w in the selling-cost function
  std::optional<double> cost_override;        // pins the suppliers' cost coefficient
  double convergence_tol = 1e-6;
  int stability_rounds = 3;
  int max_iterations = 1000;
  double damping = 0.5;
};

struct EventRow {
  int slot;
  int node;
  double stored;       // after the slot's updates
  double harvested;
  double consumed;
  double transferred;  // signed net transfer this slot, positive = received
  double price;        // clearing price of the round the node took part in, else 0
};

// Deterministic discrete-time simulator. Each slot: harvest, seeded demand
// draw, then cooperation rounds serving demanders in deficit-descending order.
class Simulator {
 public:
  Simulator(std::vector<NodeState> nodes, const SimConfig& config);

  void step();
  void run(int slots);

  // Executes protocol steps 1-5 for one demander. Aborted rounds (no
  // suppliers, non-converged game, or an allocation exceeding a supplier's
  // surplus) leave every node state untouched.
  CooperationRound run_cooperation_round(std::size_t demander_index, GameKind game);

  const std::vector<NodeState>& nodes() const { return nodes_; }
  const std::vector<EventRow>& log() const { return log_; }
  const std::vector<CooperationRound>& rounds() const { return rounds_; }
  int current_slot() const { return slot_; }

  double total_harvested() const { return total_harvested_; }
  double total_consumed() const { return total_consumed_; }
  double total_transfer_loss() const { return total_transfer_loss_; }
  double total_unmet_demand() const { return total_unmet_; }
  double total_stored() const;

  // initial + harvested - consumed - transfer losses - current stored.
  // Zero (to rounding) when the energy ledger balances.
  double conservation_residual() const;

 private:
  double demand_draw(const NodeState& node);
  MarketScenario build_scenario(std::size_t demander_index,
                                const std::vector<std::size_t>& supplier_indices,
                                GameKind game) const;

  std::vector<NodeState> nodes_;
  SimConfig config_;
  std::uint64_t rng_state_;
  int slot_ = 0;
  double initial_stored_ = 0.0;
  double total_harvested_ = 0.0;
  double total_consumed_ = 0.0;
  double total_transfer_loss_ = 0.0;
  double total_unmet_ = 0.0;
  std::vector<EventRow> log_;
  std::vector<CooperationRound> rounds_;
};

}  // namespace ecoop
