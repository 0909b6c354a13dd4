#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "demand_model.hpp"

using namespace ecoop;

namespace {

// Independent oracle: Poisson terms by the recursion t_0 = e^-l,
// t_k = t_{k-1} * l / k. No log-gamma involved.
double recursive_poisson_cdf(double lambda, long m) {
  double term = std::exp(-lambda);
  double cdf = term;
  for (long k = 1; k <= m; ++k) {
    term *= lambda / static_cast<double>(k);
    cdf += term;
  }
  return cdf;
}

}  // namespace

TEST_CASE("packet pmf matches frozen arbitrary-precision values") {
  const TrafficProcess proc(5.0, 1.0, 1.0);
  CHECK(packet_pmf(proc, 0) == doctest::Approx(0.006737946999085467).epsilon(1e-12));
  CHECK(packet_pmf(proc, 5) == doctest::Approx(0.1754673697678507).epsilon(1e-12));
}

TEST_CASE("zero-rate process emits nothing") {
  const TrafficProcess proc(0.0, 2.0, 1.0);
  CHECK(packet_pmf(proc, 0) == 1.0);
  CHECK(packet_pmf(proc, 1) == 0.0);
  const DemandDistribution dist = demand_distribution(proc);
  CHECK(dist.size() == 1);
  CHECK(dist.level(0) == 0.0);
}

TEST_CASE("negative count is a domain error") {
  const TrafficProcess proc(5.0, 1.0, 1.0);
  CHECK_THROWS_AS(packet_pmf(proc, -1), std::domain_error);
}

TEST_CASE("invalid traffic parameters are rejected") {
  CHECK_THROWS_AS(TrafficProcess(-1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TrafficProcess(1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TrafficProcess(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("pmf stays usable at large traffic quantities") {
  const TrafficProcess proc(1e4, 1.0, 1.0);
  const double at_mode = packet_pmf(proc, 10000);
  CHECK(std::isfinite(at_mode));
  CHECK(at_mode > 0.0);
}

TEST_CASE("truncation reaches the requested mass without renormalizing") {
  const TrafficProcess proc(5.0, 1.0, 1.0);
  const DemandDistribution dist = demand_distribution(proc, 1e-12);
  CHECK(dist.total_mass() >= 1.0 - 1e-12);
  CHECK(dist.total_mass() <= 1.0);
  // Support is {0..n_max} scaled by a = 1.
  for (std::size_t k = 0; k < dist.size(); ++k) {
    CHECK(dist.level(k) == static_cast<double>(k));
  }
}

TEST_CASE("demand levels scale with the per-packet energy") {
  const TrafficProcess proc(10.0, 1.0, 2.0);
  const DemandDistribution dist = demand_distribution(proc);
  CHECK(dist.level(3) == 6.0);
}

TEST_CASE("cdf values match frozen partial Poisson sums") {
  const TrafficProcess proc(5.0, 1.0, 1.0);
  const DemandDistribution dist = demand_distribution(proc);
  CHECK(demand_cdf(dist, 4.0) == doctest::Approx(0.4404932850652124).epsilon(1e-12));
  CHECK(demand_cdf(dist, 7.0) == doctest::Approx(0.8666283259299927).epsilon(1e-12));
}

TEST_CASE("cdf edge behaviour") {
  const TrafficProcess proc(5.0, 1.0, 1.0);
  const DemandDistribution dist = demand_distribution(proc);
  CHECK(demand_cdf(dist, -0.5) == 0.0);
  CHECK(demand_cdf(dist, dist.level(dist.size() - 1) + 10.0) == dist.total_mass());
  // Right-continuity: the step is included at its own level.
  CHECK(demand_cdf(dist, 0.0) == dist.probability(0));
}

TEST_CASE("cdf is monotone and bounded for random processes") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> mu(0.1, 30.0);
  std::uniform_real_distribution<double> energy(0.2, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const TrafficProcess proc(mu(rng), 1.0, energy(rng));
    const DemandDistribution dist = demand_distribution(proc);
    double previous = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
      const double value = demand_cdf(dist, dist.level(k));
      CHECK(value >= previous);
      CHECK(value <= dist.total_mass() + 1e-15);
      previous = value;
    }
  }
}

TEST_CASE("pmf mode sits at floor of the traffic quantity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mu(0.5, 40.0);
  for (int trial = 0; trial < 30; ++trial) {
    const TrafficProcess proc(mu(rng), 1.0, 1.0);
    const DemandDistribution dist = demand_distribution(proc);
    const long mode = static_cast<long>(std::floor(proc.traffic_quantity()));
    const double at_mode = packet_pmf(proc, mode);
    for (std::size_t k = 0; k < dist.size(); ++k) {
      CHECK(at_mode >= dist.probability(k) - 1e-15);
    }
  }
}

TEST_CASE("unit-energy cdf agrees with the recursive-term oracle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mu(0.5, 50.0);
  for (int trial = 0; trial < 30; ++trial) {
    const TrafficProcess proc(mu(rng), 1.0, 1.0);
    const DemandDistribution dist = demand_distribution(proc);
    for (long m : {0L, 1L, 3L, 10L, 25L}) {
      if (static_cast<std::size_t>(m) >= dist.size()) continue;
      CHECK(demand_cdf(dist, static_cast<double>(m)) ==
            doctest::Approx(recursive_poisson_cdf(proc.traffic_quantity(), m))
                .epsilon(1e-10));
    }
  }
}

TEST_CASE("mass_tol outside (0, 1e-6] is rejected") {
  const TrafficProcess proc(5.0, 1.0, 1.0);
  CHECK_THROWS_AS(demand_distribution(proc, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(demand_distribution(proc, 1e-3), std::invalid_argument);
}
