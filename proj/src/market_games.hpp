#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ecoop {

enum class GameKind { kStatic, kCournot, kStackelberg };

// One selling node in the energy market. The quadratic selling-cost
// coefficient is w * D * (P_req / S)^2; cost_override pins it directly
// (the case-study algorithms round it to 4).
struct SupplierProfile {
  double stored_energy;          // S_i, energy units, > 0
  double required_power;         // P_i^req, uW, >= 0
  double traffic_quantity;       // D_i, packets, > 0
  double cost_weight;            // w, >= 0
  double initial_offer = 0.0;    // seed for best-response iteration, uW
  std::optional<double> cost_override;

  double cost_coefficient() const;
  void validate() const;
};

struct MarketScenario {
  double demander_efficiency = 0.0;  // k_d, price intercept
  std::vector<SupplierProfile> suppliers;
  GameKind game = GameKind::kCournot;
  std::size_t leaders = 0;    // m, stackelberg only
  std::size_t followers = 0;  // n, stackelberg only
  double convergence_tol = 1e-6;
  int stability_rounds = 3;
  int max_iterations = 1000;
  double damping = 1.0;  // step factor for simultaneous best-response updates

  void validate() const;
};

struct EquilibriumResult {
  std::vector<double> allocations;  // p_i, uW
  double price = 0.0;               // q = k_d - total_volume
  double total_volume = 0.0;
  std::vector<double> payoffs;
  int iterations = 0;
  std::vector<std::vector<double>> trace;  // allocation vector per iteration, seed first
  bool converged = false;
};

// Demander utility: sum(p)*k_d - (sum(p))^2/2 - q*sum(p).
double demander_payoff(std::span<const double> allocations, double demander_efficiency,
                       double price);

// Inverse demand q = k_d - sum(p). Negative when oversupplied; not clamped.
double market_price(std::span<const double> allocations, double demander_efficiency);

// Quadratic selling cost c_i * p^2. Throws std::domain_error for p < 0.
double selling_cost(const SupplierProfile& profile, double amount);

// (k_d - others - p)*p - c_i*p^2.
double supplier_payoff(const SupplierProfile& profile, double amount,
                       double others_total, double demander_efficiency);

// argmax of supplier_payoff, clamped at zero: max(0, (k_d - others)/(2 + 2c)).
double cournot_best_response(const SupplierProfile& profile, double others_total,
                             double demander_efficiency);

// Simultaneous best-response iteration seeded from initial offers; converged
// when every allocation moves by less than convergence_tol for
// stability_rounds consecutive iterations. Exceeding max_iterations yields a
// non-converged result with its full trace, not an exception.
EquilibriumResult cournot_solve(const MarketScenario& scenario);

// Leaders (the first `leaders` suppliers) best-respond to each other while
// anticipating the followers' aggregate reaction; followers best-respond to
// the leaders' running total and to each other. Same convergence contract as
// cournot_solve.
EquilibriumResult stackelberg_solve(const MarketScenario& scenario);

// Uniform-strategy baseline: every supplier sells k_d/(2M + 2c). Requires
// identical cost coefficients.
EquilibriumResult static_solve(const MarketScenario& scenario);

// Dispatch on scenario.game.
EquilibriumResult solve(const MarketScenario& scenario);

// Unilateral-deviation scan: no supplier in `players` (all when empty) can
// improve its payoff by more than 1e-6 at any grid point in [0, k_d].
bool nash_check(const EquilibriumResult& result, const MarketScenario& scenario,
                double deviation_grid, std::span<const std::size_t> players = {});

}  // namespace ecoop
