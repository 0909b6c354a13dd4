#include "inventory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecoop {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Holding/shortage expectation at order-up-to level S, no fixed terms.
double carry_cost(double order_up_to, const DemandDistribution& dist,
                  const CostParams& costs) {
  double holding = 0.0;
  double shortage = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double d = dist.level(k);
    const double p = dist.probability(k);
    if (d <= order_up_to) {
      holding += (order_up_to - d) * p;
    } else {
      shortage += (d - order_up_to) * p;
    }
  }
  return costs.holding * holding + costs.shortage * shortage;
}

std::size_t support_index(const DemandDistribution& dist, double level) {
  const auto& levels = dist.levels();
  auto it = std::lower_bound(levels.begin(), levels.end(), level);
  if (it == levels.end() || *it != level) {
    throw std::invalid_argument("inventory: level is not a member of the demand support");
  }
  return static_cast<std::size_t>(it - levels.begin());
}

}  // namespace

CostParams::CostParams(double holding_cost, double shortage_cost, double purchase_cost,
                       double setup_cost)
    : holding(holding_cost), shortage(shortage_cost), purchase(purchase_cost),
      setup(setup_cost) {
  require(std::isfinite(holding) && holding >= 0.0, "CostParams: holding must be >= 0");
  require(std::isfinite(shortage) && shortage >= 0.0, "CostParams: shortage must be >= 0");
  require(std::isfinite(purchase) && purchase >= 0.0, "CostParams: purchase must be >= 0");
  require(std::isfinite(setup) && setup >= 0.0, "CostParams: setup must be >= 0");
  require(shortage + holding > 0.0, "CostParams: shortage + holding must be > 0");
}

ExistingStock::ExistingStock(double energy_units) : amount(energy_units) {
  require(std::isfinite(amount) && amount >= 0.0, "ExistingStock: amount must be >= 0");
}

double expected_cost(double order_up_to, const DemandDistribution& dist,
                     const CostParams& costs, const ExistingStock& stock) {
  return costs.setup + costs.purchase * (order_up_to - stock.amount) +
         carry_cost(order_up_to, dist, costs);
}

double delta_cost(double level, const DemandDistribution& dist, const CostParams& costs) {
  const std::size_t a = support_index(dist, level);
  if (a + 1 >= dist.size()) {
    throw std::out_of_range("delta_cost: level has no successor in the support");
  }
  const double step = dist.level(a + 1) - dist.level(a);
  return (dist.cumulative(a) - critical_ratio(costs)) *
         (costs.holding + costs.shortage) * step;
}

double critical_ratio(const CostParams& costs) {
  return (costs.shortage - costs.purchase) / (costs.shortage + costs.holding);
}

double optimal_inventory(const DemandDistribution& dist, const CostParams& costs) {
  const double ratio = critical_ratio(costs);
  if (ratio < 0.0 || ratio > 1.0) {
    throw std::domain_error("optimal_inventory: critical ratio outside [0, 1]");
  }
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist.cumulative(k) >= ratio) return dist.level(k);
  }
  // Very-high-traffic extreme: no interior level reaches the ratio.
  return dist.level(dist.size() - 1);
}

double reorder_point(const DemandDistribution& dist, const CostParams& costs,
                     double s_star) {
  const double order_cost = costs.setup + costs.purchase * s_star +
                            carry_cost(s_star, dist, costs);
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double s = dist.level(k);
    if (s > s_star) break;
    const double hold_cost = costs.purchase * s + carry_cost(s, dist, costs);
    if (hold_cost <= order_cost) return s;
  }
  return s_star;
}

double brute_force_optimum(const DemandDistribution& dist, const CostParams& costs) {
  const ExistingStock no_stock(0.0);
  double best_level = dist.level(0);
  double best_cost = expected_cost(best_level, dist, costs, no_stock);
  for (std::size_t k = 1; k < dist.size(); ++k) {
    const double cost = expected_cost(dist.level(k), dist, costs, no_stock);
    if (cost < best_cost) {
      best_cost = cost;
      best_level = dist.level(k);
    }
  }
  return best_level;
}

InventoryPolicy solve_policy(const DemandDistribution& dist, const CostParams& costs,
                             const ExistingStock& stock) {
  const double s_star = optimal_inventory(dist, costs);
  InventoryPolicy policy;
  policy.order_up_to = s_star;
  policy.reorder_point = reorder_point(dist, costs, s_star);
  policy.expected_cost = expected_cost(s_star, dist, costs, stock);
  return policy;
}

}  // namespace ecoop
