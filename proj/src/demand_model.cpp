#include "demand_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ecoop {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

TrafficProcess::TrafficProcess(double mu, double tau, double a)
    : arrival_rate(mu), window(tau), energy_per_packet(a) {
  require(std::isfinite(mu) && mu >= 0.0, "TrafficProcess: arrival_rate must be finite and >= 0");
  require(std::isfinite(tau) && tau > 0.0, "TrafficProcess: window must be finite and > 0");
  require(std::isfinite(a) && a > 0.0, "TrafficProcess: energy_per_packet must be finite and > 0");
  require(std::isfinite(mu * tau), "TrafficProcess: traffic quantity must be finite");
}

DemandDistribution::DemandDistribution(std::vector<double> levels,
                                       std::vector<double> probabilities)
    : levels_(std::move(levels)), probabilities_(std::move(probabilities)) {
  require(!levels_.empty(), "DemandDistribution: empty support");
  require(levels_.size() == probabilities_.size(),
          "DemandDistribution: support/probability size mismatch");
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    require(std::isfinite(levels_[k]), "DemandDistribution: non-finite demand level");
    if (k > 0) {
      require(levels_[k] > levels_[k - 1],
              "DemandDistribution: support must be strictly increasing");
    }
    require(probabilities_[k] >= 0.0 && probabilities_[k] <= 1.0,
            "DemandDistribution: probability outside [0, 1]");
  }
  cumulative_.resize(probabilities_.size());
  double running = 0.0;
  for (std::size_t k = 0; k < probabilities_.size(); ++k) {
    running += probabilities_[k];
    cumulative_[k] = running;
  }
  require(running <= 1.0 + 1e-12 && running >= 1.0 - 1e-6,
          "DemandDistribution: total mass must be within truncation tolerance of 1");
}

double DemandDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < levels_.size(); ++k) m += levels_[k] * probabilities_[k];
  return m;
}

double packet_pmf(const TrafficProcess& proc, long k) {
  if (k < 0) throw std::domain_error("packet_pmf: k must be >= 0");
  const double lambda = proc.traffic_quantity();
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

DemandDistribution demand_distribution(const TrafficProcess& proc, double mass_tol) {
  if (!(mass_tol > 0.0 && mass_tol <= 1e-6)) {
    throw std::invalid_argument("demand_distribution: mass_tol must be in (0, 1e-6]");
  }
  std::vector<double> levels;
  std::vector<double> probs;
  double cumulative = 0.0;
  long k = 0;
  while (true) {
    const double p = packet_pmf(proc, k);
    levels.push_back(proc.energy_per_packet * static_cast<double>(k));
    probs.push_back(p);
    cumulative += p;
    if (cumulative >= 1.0 - mass_tol) break;
    ++k;
  }
  return DemandDistribution(std::move(levels), std::move(probs));
}

double demand_cdf(const DemandDistribution& dist, double level) {
  const auto& levels = dist.levels();
  auto it = std::upper_bound(levels.begin(), levels.end(), level);
  if (it == levels.begin()) return 0.0;
  const std::size_t idx = static_cast<std::size_t>(it - levels.begin()) - 1;
  return dist.cumulative(idx);
}

}  // namespace ecoop
