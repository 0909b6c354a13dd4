#include "market_games.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ecoop {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double total_of(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

void finalize(EquilibriumResult& result, const MarketScenario& scenario) {
  result.total_volume = total_of(result.allocations);
  result.price = scenario.demander_efficiency - result.total_volume;
  result.payoffs.resize(result.allocations.size());
  for (std::size_t i = 0; i < result.allocations.size(); ++i) {
    result.payoffs[i] = supplier_payoff(scenario.suppliers[i], result.allocations[i],
                                        result.total_volume - result.allocations[i],
                                        scenario.demander_efficiency);
  }
}

// Runs the damped simultaneous update map until the stability rule holds:
// every allocation moves by less than convergence_tol for stability_rounds
// consecutive iterations.
template <typename UpdateFn>
EquilibriumResult iterate_to_equilibrium(const MarketScenario& scenario,
                                         UpdateFn&& best_response) {
  EquilibriumResult result;
  result.allocations.reserve(scenario.suppliers.size());
  for (const auto& s : scenario.suppliers) result.allocations.push_back(s.initial_offer);
  result.trace.push_back(result.allocations);

  int stable = 0;
  std::vector<double> next(result.allocations.size());
  for (int iter = 1; iter <= scenario.max_iterations; ++iter) {
    double max_change = 0.0;
    for (std::size_t i = 0; i < result.allocations.size(); ++i) {
      const double target = best_response(i, result.allocations);
      next[i] = result.allocations[i] +
                scenario.damping * (target - result.allocations[i]);
      max_change = std::max(max_change, std::abs(next[i] - result.allocations[i]));
    }
    result.allocations = next;
    result.trace.push_back(result.allocations);
    result.iterations = iter;
    stable = max_change < scenario.convergence_tol ? stable + 1 : 0;
    if (stable >= scenario.stability_rounds) {
      result.converged = true;
      break;
    }
  }
  finalize(result, scenario);
  return result;
}

}  // namespace

double SupplierProfile::cost_coefficient() const {
  if (cost_override) return *cost_override;
  const double ratio = required_power / stored_energy;
  return cost_weight * traffic_quantity * ratio * ratio;
}

void SupplierProfile::validate() const {
  require(std::isfinite(stored_energy) && stored_energy > 0.0,
          "SupplierProfile: stored_energy must be > 0");
  require(std::isfinite(required_power) && required_power >= 0.0,
          "SupplierProfile: required_power must be >= 0");
  require(std::isfinite(traffic_quantity) && traffic_quantity > 0.0,
          "SupplierProfile: traffic_quantity must be > 0");
  require(std::isfinite(cost_weight) && cost_weight >= 0.0,
          "SupplierProfile: cost_weight must be >= 0");
  require(std::isfinite(initial_offer) && initial_offer >= 0.0,
          "SupplierProfile: initial_offer must be >= 0");
  if (cost_override) {
    require(std::isfinite(*cost_override) && *cost_override >= 0.0,
            "SupplierProfile: cost_override must be >= 0");
  }
  require(std::isfinite(cost_coefficient()), "SupplierProfile: cost coefficient not finite");
}

void MarketScenario::validate() const {
  require(std::isfinite(demander_efficiency) && demander_efficiency > 0.0,
          "MarketScenario: demander_efficiency must be > 0");
  require(!suppliers.empty(), "MarketScenario: at least one supplier required");
  for (const auto& s : suppliers) s.validate();
  require(convergence_tol > 0.0, "MarketScenario: convergence_tol must be > 0");
  require(stability_rounds >= 1, "MarketScenario: stability_rounds must be >= 1");
  require(max_iterations >= 1, "MarketScenario: max_iterations must be >= 1");
  require(damping > 0.0 && damping <= 1.0, "MarketScenario: damping must be in (0, 1]");
  if (game == GameKind::kStackelberg) {
    require(leaders >= 1, "MarketScenario: stackelberg needs at least one leader");
    require(followers >= 1, "MarketScenario: stackelberg needs at least one follower");
    require(leaders + followers == suppliers.size(),
            "MarketScenario: leaders + followers must equal the supplier count");
  }
}

double demander_payoff(std::span<const double> allocations, double demander_efficiency,
                       double price) {
  const double total = total_of(allocations);
  return total * demander_efficiency - 0.5 * total * total - price * total;
}

double market_price(std::span<const double> allocations, double demander_efficiency) {
  return demander_efficiency - total_of(allocations);
}

double selling_cost(const SupplierProfile& profile, double amount) {
  if (amount < 0.0) throw std::domain_error("selling_cost: amount must be >= 0");
  return profile.cost_coefficient() * amount * amount;
}

double supplier_payoff(const SupplierProfile& profile, double amount,
                       double others_total, double demander_efficiency) {
  return (demander_efficiency - others_total - amount) * amount -
         profile.cost_coefficient() * amount * amount;
}

double cournot_best_response(const SupplierProfile& profile, double others_total,
                             double demander_efficiency) {
  const double unconstrained = (demander_efficiency - others_total) /
                               (2.0 + 2.0 * profile.cost_coefficient());
  return std::max(0.0, unconstrained);
}

EquilibriumResult cournot_solve(const MarketScenario& scenario) {
  require(scenario.game == GameKind::kCournot, "cournot_solve: scenario.game mismatch");
  scenario.validate();
  return iterate_to_equilibrium(
      scenario, [&](std::size_t i, const std::vector<double>& current) {
        const double others = total_of(current) - current[i];
        return cournot_best_response(scenario.suppliers[i], others,
                                     scenario.demander_efficiency);
      });
}

EquilibriumResult stackelberg_solve(const MarketScenario& scenario) {
  require(scenario.game == GameKind::kStackelberg,
          "stackelberg_solve: scenario.game mismatch");
  scenario.validate();
  const std::size_t m = scenario.leaders;
  const double k_d = scenario.demander_efficiency;

  // Aggregate slope of the followers' reaction: sum over followers of
  // 1/(1 + 2c_i). The followers' total given a leader total B is
  // sigma*(k_d - B)/(1 + sigma), so the residual price seen by a leader is
  // (k_d - B)/(1 + sigma).
  double sigma = 0.0;
  for (std::size_t i = m; i < scenario.suppliers.size(); ++i) {
    sigma += 1.0 / (1.0 + 2.0 * scenario.suppliers[i].cost_coefficient());
  }

  return iterate_to_equilibrium(
      scenario, [&, sigma](std::size_t i, const std::vector<double>& current) {
        if (i < m) {
          double leader_others = 0.0;
          for (std::size_t j = 0; j < m; ++j) {
            if (j != i) leader_others += current[j];
          }
          const double c = scenario.suppliers[i].cost_coefficient();
          return std::max(0.0, (k_d - leader_others) / (2.0 + 2.0 * c * (1.0 + sigma)));
        }
        double leader_total = 0.0;
        for (std::size_t j = 0; j < m; ++j) leader_total += current[j];
        double follower_others = 0.0;
        for (std::size_t j = m; j < current.size(); ++j) {
          if (j != i) follower_others += current[j];
        }
        return cournot_best_response(scenario.suppliers[i],
                                     leader_total + follower_others, k_d);
      });
}

EquilibriumResult static_solve(const MarketScenario& scenario) {
  require(scenario.game == GameKind::kStatic, "static_solve: scenario.game mismatch");
  scenario.validate();
  const double c = scenario.suppliers.front().cost_coefficient();
  for (const auto& s : scenario.suppliers) {
    if (std::abs(s.cost_coefficient() - c) > 1e-9 * std::max(1.0, std::abs(c))) {
      throw std::invalid_argument("static_solve: baseline requires uniform supplier profiles");
    }
  }
  const double count = static_cast<double>(scenario.suppliers.size());
  const double per_supplier = scenario.demander_efficiency / (2.0 * count + 2.0 * c);
  EquilibriumResult result;
  result.allocations.assign(scenario.suppliers.size(), per_supplier);
  result.trace.push_back(result.allocations);
  result.iterations = 1;
  result.converged = true;
  finalize(result, scenario);
  return result;
}

EquilibriumResult solve(const MarketScenario& scenario) {
  switch (scenario.game) {
    case GameKind::kStatic:
      return static_solve(scenario);
    case GameKind::kCournot:
      return cournot_solve(scenario);
    case GameKind::kStackelberg:
      return stackelberg_solve(scenario);
  }
  throw std::invalid_argument("solve: unknown game kind");
}

bool nash_check(const EquilibriumResult& result, const MarketScenario& scenario,
                double deviation_grid, std::span<const std::size_t> players) {
  require(deviation_grid > 0.0, "nash_check: deviation grid step must be > 0");
  constexpr double kSlack = 1e-6;
  const double k_d = scenario.demander_efficiency;

  std::vector<std::size_t> all;
  if (players.empty()) {
    all.resize(result.allocations.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    players = all;
  }

  for (std::size_t i : players) {
    const double own = result.allocations[i];
    const double others = result.total_volume - own;
    const double base = supplier_payoff(scenario.suppliers[i], own, others, k_d);
    for (double p = 0.0; p <= k_d + 0.5 * deviation_grid; p += deviation_grid) {
      const double candidate = std::min(p, k_d);
      if (supplier_payoff(scenario.suppliers[i], candidate, others, k_d) > base + kSlack) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace ecoop
