#pragma once

#include <cstddef>
#include <vector>

namespace ecoop {

// Poisson packet-arrival process over one observation window. The product
// arrival_rate * window is the expected traffic quantity; each packet costs
// energy_per_packet units of energy to serve.
struct TrafficProcess {
  double arrival_rate;       // mu, packets per unit time, >= 0
  double window;             // tau, time units, > 0
  double energy_per_packet;  // a, energy units per packet, > 0

  TrafficProcess(double mu, double tau, double a);

  double traffic_quantity() const { return arrival_rate * window; }
};

// Truncated discrete demand law: strictly increasing energy levels d_k with
// Poisson probabilities. Probabilities are not renormalized; the missing tail
// mass is bounded by the truncation tolerance used to build the distribution.
class DemandDistribution {
 public:
  DemandDistribution(std::vector<double> levels, std::vector<double> probabilities);

  std::size_t size() const { return levels_.size(); }
  double level(std::size_t k) const { return levels_[k]; }
  double probability(std::size_t k) const { return probabilities_[k]; }
  // Cumulative mass through index k (inclusive).
  double cumulative(std::size_t k) const { return cumulative_[k]; }
  double total_mass() const { return cumulative_.back(); }
  double mean() const;

  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& probabilities() const { return probabilities_; }

 private:
  std::vector<double> levels_;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

// P(K = k) for the packet count over the window, evaluated in log space.
// Throws std::domain_error for k < 0.
double packet_pmf(const TrafficProcess& proc, long k);

// Builds the demand law on levels {a*k : k = 0..n_max}, where n_max is the
// smallest count whose cumulative Poisson mass reaches 1 - mass_tol.
// mass_tol must lie in (0, 1e-6].
DemandDistribution demand_distribution(const TrafficProcess& proc,
                                       double mass_tol = 1e-12);

// Sum of p(d_k) over d_k <= level; right-continuous step function.
double demand_cdf(const DemandDistribution& dist, double level);

}  // namespace ecoop
