#pragma once

#include "demand_model.hpp"

namespace ecoop {

// Per-unit inventory cost structure for the energy storage problem.
struct CostParams {
  double holding;   // C_H, cost per energy unit held, >= 0
  double shortage;  // C_S, cost per energy unit short, >= 0
  double purchase;  // C_PUR, cost per energy unit ordered, >= 0
  double setup;     // c_se, cost per order, >= 0

  CostParams(double holding_cost, double shortage_cost, double purchase_cost = 0.0,
             double setup_cost = 0.0);
};

struct ExistingStock {
  double amount;  // I, energy units, >= 0

  explicit ExistingStock(double energy_units = 0.0);
};

struct InventoryPolicy {
  double reorder_point;  // s
  double order_up_to;    // S*
  double expected_cost;  // cost at S*

};

// Expected single-period cost of ordering up to S:
// c_se + C_PUR*(S - I) + C_H*sum_{d<=S}(S-d)p(d) + C_S*sum_{d>S}(d-S)p(d).
// S need not be a support member.
double expected_cost(double order_up_to, const DemandDistribution& dist,
                     const CostParams& costs, const ExistingStock& stock);

// Cost increment between a support level and its successor,
// (F(S_a) - F_crit) * (C_H + C_S) * (S_{a+1} - S_a).
// Equals expected_cost(S_{a+1}) - expected_cost(S_a); the setup and
// existing-stock terms cancel in the difference.
// level must be a support member with a successor.
double delta_cost(double level, const DemandDistribution& dist, const CostParams& costs);

// Critical ratio F = (C_S - C_PUR)/(C_S + C_H). A value outside [0, 1] signals
// degenerate costs; this function returns it unclamped and callers decide.
double critical_ratio(const CostParams& costs);

// Smallest support level whose cumulative demand mass reaches the critical
// ratio. Returns the largest level when no level reaches it (very high
// traffic extreme). Throws std::domain_error when F lies outside [0, 1].
double optimal_inventory(const DemandDistribution& dist, const CostParams& costs);

// Smallest support level s at which not ordering is no costlier than ordering
// up to s_star. Equals s_star when setup and purchase costs are zero.
double reorder_point(const DemandDistribution& dist, const CostParams& costs,
                     double s_star);

// Independent oracle: argmin of expected_cost over the whole support,
// ties broken toward the smaller level. Setup and existing-stock terms are
// constant in S and do not move the argmin.
double brute_force_optimum(const DemandDistribution& dist, const CostParams& costs);

InventoryPolicy solve_policy(const DemandDistribution& dist, const CostParams& costs,
                             const ExistingStock& stock = ExistingStock());

}  // namespace ecoop
