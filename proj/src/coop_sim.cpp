#include "coop_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecoop {

namespace {

// splitmix64; keeps demand draws bit-identical across platforms.
std::uint64_t next_u64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double next_unit_double(std::uint64_t& state) {
  return static_cast<double>(next_u64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

NodeState::NodeState(int id, double stored_energy, double harvest_rate,
                     const TrafficProcess& traffic, const ChannelParams& channel,
                     const CostParams& costs)
    : id_(id), stored_(stored_energy), harvest_rate_(harvest_rate), traffic_(traffic),
      channel_(channel), costs_(costs), demand_(demand_distribution(traffic)),
      policy_(solve_policy(demand_, costs)) {
  if (!(std::isfinite(stored_) && stored_ >= 0.0)) {
    throw std::invalid_argument("NodeState: stored_energy must be >= 0");
  }
  if (!(std::isfinite(harvest_rate_) && harvest_rate_ >= 0.0)) {
    throw std::invalid_argument("NodeState: harvest_rate must be >= 0");
  }
}

void NodeState::set_traffic(const TrafficProcess& traffic) {
  traffic_ = traffic;
  demand_ = demand_distribution(traffic_);
  policy_ = solve_policy(demand_, costs_);
}

Classification classify_nodes(const std::vector<NodeState>& nodes) {
  Classification result;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double surplus = nodes[i].surplus();
    if (surplus > 0.0) {
      result.suppliers.push_back(i);
    } else if (surplus < 0.0) {
      result.demanders.push_back(i);
    } else {
      result.idle.push_back(i);
    }
  }
  return result;
}

Simulator::Simulator(std::vector<NodeState> nodes, const SimConfig& config)
    : nodes_(std::move(nodes)), config_(config), rng_state_(config.seed) {
  if (nodes_.empty()) throw std::invalid_argument("Simulator: no nodes");
  if (!(config_.transfer_efficiency > 0.0 && config_.transfer_efficiency <= 1.0)) {
    throw std::invalid_argument("Simulator: transfer_efficiency must be in (0, 1]");
  }
  for (const auto& n : nodes_) initial_stored_ += n.stored_energy();
}

double Simulator::total_stored() const {
  double total = 0.0;
  for (const auto& n : nodes_) total += n.stored_energy();
  return total;
}

double Simulator::conservation_residual() const {
  return initial_stored_ + total_harvested_ - total_consumed_ - total_transfer_loss_ -
         total_stored();
}

double Simulator::demand_draw(const NodeState& node) {
  const auto& dist = node.demand();
  const double u = next_unit_double(rng_state_) * dist.total_mass();
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (u < dist.cumulative(k)) return dist.level(k);
  }
  return dist.level(dist.size() - 1);
}

MarketScenario Simulator::build_scenario(std::size_t demander_index,
                                         const std::vector<std::size_t>& supplier_indices,
                                         GameKind game) const {
  MarketScenario scenario;
  scenario.game = game;
  if (config_.demander_efficiency_override > 0.0) {
    scenario.demander_efficiency = config_.demander_efficiency_override;
  } else {
    // bits per joule -> bits per uW-slot energy unit.
    scenario.demander_efficiency =
        demander_efficiency(nodes_[demander_index].channel()) * 1e-6;
  }
  for (std::size_t i : supplier_indices) {
    const NodeState& node = nodes_[i];
    SupplierProfile profile;
    profile.stored_energy = node.stored_energy();
    profile.required_power = required_power(node.channel()) * 1e6;  // W -> uW
    profile.traffic_quantity = node.traffic().traffic_quantity();
    profile.cost_weight = config_.cost_weight;
    profile.cost_override = config_.cost_override;
    profile.initial_offer = node.last_offer();
    scenario.suppliers.push_back(profile);
  }
  if (game == GameKind::kStackelberg) {
    scenario.leaders = 1;
    scenario.followers = scenario.suppliers.size() - 1;
  }
  scenario.convergence_tol = config_.convergence_tol;
  scenario.stability_rounds = config_.stability_rounds;
  scenario.max_iterations = config_.max_iterations;
  scenario.damping = config_.damping;
  return scenario;
}

CooperationRound Simulator::run_cooperation_round(std::size_t demander_index,
                                                  GameKind game) {
  if (demander_index >= nodes_.size()) {
    throw std::invalid_argument("run_cooperation_round: demander index out of range");
  }
  const double deficit = -nodes_[demander_index].surplus();
  if (!(deficit > 0.0)) {
    throw std::invalid_argument("run_cooperation_round: demander has no deficit");
  }

  CooperationRound round;
  round.demander_id = nodes_[demander_index].id();
  round.requested_energy = deficit;

  std::vector<std::size_t> supplier_indices;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i != demander_index && nodes_[i].surplus() > 0.0) supplier_indices.push_back(i);
  }
  if (supplier_indices.empty()) {
    round.diagnostic = "no suppliers available";
    return round;
  }
  for (std::size_t i : supplier_indices) round.supplier_ids.push_back(nodes_[i].id());

  const MarketScenario scenario = build_scenario(demander_index, supplier_indices, game);
  round.equilibrium = solve(scenario);
  if (!round.equilibrium.converged) {
    round.diagnostic = "market game did not converge";
    return round;
  }
  for (std::size_t j = 0; j < supplier_indices.size(); ++j) {
    if (round.equilibrium.allocations[j] > nodes_[supplier_indices[j]].surplus()) {
      round.diagnostic = "allocation exceeds supplier surplus";
      return round;
    }
  }

  // Commit: debit suppliers, credit the demander net of transfer loss.
  double total_sold = 0.0;
  for (std::size_t j = 0; j < supplier_indices.size(); ++j) {
    NodeState& supplier = nodes_[supplier_indices[j]];
    const double sold = round.equilibrium.allocations[j];
    supplier.stored_ -= sold;
    supplier.transfer_ledger_ -= sold;
    supplier.last_offer_ = sold;
    total_sold += sold;
  }
  round.delivered_energy = config_.transfer_efficiency * total_sold;
  nodes_[demander_index].stored_ += round.delivered_energy;
  nodes_[demander_index].transfer_ledger_ += round.delivered_energy;
  total_transfer_loss_ += total_sold - round.delivered_energy;
  round.executed = true;
  return round;
}

void Simulator::step() {
  const std::size_t count = nodes_.size();
  std::vector<double> harvested(count), consumed(count), transferred(count, 0.0),
      price(count, 0.0);

  for (std::size_t i = 0; i < count; ++i) {
    NodeState& node = nodes_[i];
    harvested[i] = node.harvest_rate_;
    node.stored_ += node.harvest_rate_;
    total_harvested_ += node.harvest_rate_;

    const double demand = demand_draw(node);
    consumed[i] = std::min(node.stored_, demand);
    total_unmet_ += demand - consumed[i];
    node.stored_ -= consumed[i];
    total_consumed_ += consumed[i];
  }

  // Serve demanders in deficit-descending order; each round sees the state
  // left by the previous one.
  Classification classes = classify_nodes(nodes_);
  std::sort(classes.demanders.begin(), classes.demanders.end(),
            [&](std::size_t a, std::size_t b) {
              const double da = -nodes_[a].surplus();
              const double db = -nodes_[b].surplus();
              return da != db ? da > db : a < b;
            });
  for (std::size_t d : classes.demanders) {
    if (!(nodes_[d].surplus() < 0.0)) continue;
    std::vector<double> before(count);
    for (std::size_t i = 0; i < count; ++i) before[i] = nodes_[i].stored_energy();
    CooperationRound round = run_cooperation_round(d, config_.game);
    if (round.executed) {
      for (std::size_t i = 0; i < count; ++i) {
        const double delta = nodes_[i].stored_energy() - before[i];
        if (delta != 0.0) {
          transferred[i] += delta;
          price[i] = round.equilibrium.price;
        }
      }
    }
    rounds_.push_back(std::move(round));
  }

  for (std::size_t i = 0; i < count; ++i) {
    log_.push_back(EventRow{slot_, nodes_[i].id(), nodes_[i].stored_energy(),
                            harvested[i], consumed[i], transferred[i], price[i]});
  }
  ++slot_;
}

void Simulator::run(int slots) {
  for (int i = 0; i < slots; ++i) step();
}

}  // namespace ecoop
