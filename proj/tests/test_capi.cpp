#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <ecoop/ecoop.h>

TEST_CASE("version string is populated") {
  const std::string version = ecoop_version();
  CHECK(version == "1.0.0");
}

TEST_CASE("poisson pmf through the c interface") {
  double out = 0.0;
  REQUIRE(ecoop_poisson_pmf(5.0, 5, &out) == ECOOP_OK);
  CHECK(out == doctest::Approx(0.1754673697678507).epsilon(1e-12));
  CHECK(ecoop_poisson_pmf(5.0, 5, nullptr) == ECOOP_EINVAL);
  CHECK(ecoop_poisson_pmf(-1.0, 5, &out) == ECOOP_EINVAL);
}

TEST_CASE("channel scalars through the c interface") {
  double power = 0.0;
  REQUIRE(ecoop_required_power(10e6, 1e-8, 40e3, &power) == ECOOP_OK);
  CHECK(power == doctest::Approx(2.7764359010776885e-4).epsilon(1e-10));

  double rate = 0.0;
  REQUIRE(ecoop_achievable_rate(10e6, 1e-8, power, &rate) == ECOOP_OK);
  CHECK(rate == doctest::Approx(40e3).epsilon(1e-9));

  double efficiency = 0.0;
  REQUIRE(ecoop_demander_efficiency(10e6, 1e-8, 40e3, &efficiency) == ECOOP_OK);
  CHECK(efficiency == doctest::Approx(1.4407e8).epsilon(1e-4));

  CHECK(ecoop_achievable_rate(10e6, 1e-8, -1.0, &rate) == ECOOP_EDOMAIN);
  CHECK(std::string(ecoop_last_error()).find("power") != std::string::npos);
}

TEST_CASE("inventory policy through the c interface") {
  double order_up_to = 0.0, reorder = 0.0, cost = 0.0;
  REQUIRE(ecoop_optimal_inventory(5.0, 1.0, 4.0, 3.0, 0.0, 0.0, &order_up_to,
                                  &reorder, &cost) == ECOOP_OK);
  CHECK(order_up_to == 4.0);
  CHECK(reorder == 4.0);
  CHECK(cost == doctest::Approx(6.057904946346152).epsilon(1e-10));

  // Null outputs are allowed individually.
  REQUIRE(ecoop_optimal_inventory(10.0, 1.0, 4.0, 3.0, 0.0, 0.0, &order_up_to,
                                  nullptr, nullptr) == ECOOP_OK);
  CHECK(order_up_to == 9.0);

  CHECK(ecoop_optimal_inventory(5.0, 1.0, 0.0, 0.0, 0.0, 0.0, &order_up_to, nullptr,
                                nullptr) == ECOOP_EINVAL);
}

TEST_CASE("market equilibrium through the c interface") {
  double total = 0.0, price = 0.0;
  REQUIRE(ecoop_market_equilibrium("static", 4, 0, 357.0, 4.0, &total, &price) ==
          ECOOP_OK);
  CHECK(total == doctest::Approx(89.25).epsilon(1e-12));
  CHECK(price == doctest::Approx(357.0 - 89.25).epsilon(1e-12));

  REQUIRE(ecoop_market_equilibrium("cournot", 4, 0, 357.0, 4.0, &total, &price) ==
          ECOOP_OK);
  CHECK(total == doctest::Approx(4.0 * 357.0 / 13.0).epsilon(1e-6));

  REQUIRE(ecoop_market_equilibrium("stackelberg", 6, 3, 357.0, 4.0, &total, &price) ==
          ECOOP_OK);
  CHECK(total == doctest::Approx(3.0 * 3213.0 / 132.0 +
                                 3.0 * (357.0 - 3.0 * 3213.0 / 132.0) / 12.0)
                     .epsilon(1e-6));

  CHECK(ecoop_market_equilibrium("bertrand", 4, 0, 357.0, 4.0, &total, &price) ==
        ECOOP_EINVAL);
  CHECK(std::string(ecoop_last_error()).find("bertrand") != std::string::npos);
}

TEST_CASE("preset runs produce readable tables") {
  ecoop_table* table = nullptr;
  REQUIRE(ecoop_run_preset("fig6", &table) == ECOOP_OK);
  REQUIRE(table != nullptr);
  CHECK(ecoop_table_rows(table) == 19);
  CHECK(ecoop_table_cols(table) == 5);
  CHECK(std::string(ecoop_table_column_name(table, 0)) == "suppliers");

  // Row for four suppliers carries the static closed-form volume.
  long row = -1;
  for (long r = 0; r < ecoop_table_rows(table); ++r) {
    double suppliers = 0.0;
    REQUIRE(ecoop_table_value(table, r, 0, &suppliers) == ECOOP_OK);
    if (suppliers == 4.0) row = r;
  }
  REQUIRE(row >= 0);
  double static_total = 0.0;
  REQUIRE(ecoop_table_value(table, row, 1, &static_total) == ECOOP_OK);
  CHECK(static_total == doctest::Approx(89.25).epsilon(1e-12));

  bool saw_version = false;
  for (long i = 0; i < ecoop_table_meta_count(table); ++i) {
    if (std::string(ecoop_table_meta_key(table, i)) == "version") {
      saw_version = true;
      CHECK(std::string(ecoop_table_meta_value(table, i)) == "1.0.0");
    }
  }
  CHECK(saw_version);

  double out = 0.0;
  CHECK(ecoop_table_value(table, 1000, 0, &out) == ECOOP_EINVAL);

  const char* path = "capi_fig6_tmp.csv";
  REQUIRE(ecoop_table_write_csv(table, path, 0) == ECOOP_OK);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str().find("# table = fig6") != std::string::npos);
  CHECK(text.str().find("suppliers,") != std::string::npos);
  in.close();
  std::remove(path);

  ecoop_table_free(table);
}

TEST_CASE("preset errors set status and message") {
  ecoop_table* table = nullptr;
  CHECK(ecoop_run_preset("fig99", &table) == ECOOP_EINVAL);
  CHECK(table == nullptr);
  CHECK(std::string(ecoop_last_error()).find("fig99") != std::string::npos);
  CHECK(ecoop_run_preset("fig2", nullptr) == ECOOP_EINVAL);
}

TEST_CASE("config runs honor mode and seed override") {
  const char* path = "capi_config_tmp.json";
  {
    std::ofstream out(path);
    out << R"({"market": {"k_d": 357, "cost_coefficient": 4, "suppliers": 4},
               "sim": {"slots": 20, "nodes": 4, "harvest": 6, "harvest_step": -1,
                       "initial_stored": 10}})";
  }

  ecoop_table* market = nullptr;
  REQUIRE(ecoop_run_config(path, "market", nullptr, &market) == ECOOP_OK);
  bool found_total = false;
  for (long i = 0; i < ecoop_table_meta_count(market); ++i) {
    if (std::string(ecoop_table_meta_key(market, i)) == "total_volume") {
      found_total = true;
      CHECK(std::stod(ecoop_table_meta_value(market, i)) ==
            doctest::Approx(4.0 * 357.0 / 13.0).epsilon(1e-6));
    }
  }
  CHECK(found_total);
  ecoop_table_free(market);

  ecoop_table* inventory = nullptr;
  REQUIRE(ecoop_run_config(path, "inventory", nullptr, &inventory) == ECOOP_OK);
  bool found_optimum = false;
  for (long i = 0; i < ecoop_table_meta_count(inventory); ++i) {
    if (std::string(ecoop_table_meta_key(inventory, i)) == "optimal_S") {
      found_optimum = true;
      CHECK(std::stod(ecoop_table_meta_value(inventory, i)) == 4.0);
    }
  }
  CHECK(found_optimum);
  ecoop_table_free(inventory);

  // Same override twice reproduces the trace; the configured seed differs.
  auto sim_meta = [&](const unsigned long long* seed, const char* key) {
    ecoop_table* table = nullptr;
    REQUIRE(ecoop_run_config(path, "sim", seed, &table) == ECOOP_OK);
    std::string value;
    for (long i = 0; i < ecoop_table_meta_count(table); ++i) {
      if (key == std::string(ecoop_table_meta_key(table, i))) {
        value = ecoop_table_meta_value(table, i);
      }
    }
    ecoop_table_free(table);
    return value;
  };
  const unsigned long long seed = 99;
  CHECK(sim_meta(&seed, "seed") == "99");
  CHECK(sim_meta(&seed, "total_consumed") == sim_meta(&seed, "total_consumed"));
  CHECK(sim_meta(nullptr, "seed") == "1");

  CHECK(ecoop_run_config(path, "orchestrate", nullptr, &market) == ECOOP_EINVAL);
  CHECK(ecoop_run_config("no_such_file.json", "run", nullptr, &market) ==
        ECOOP_EINVAL);
  CHECK(std::string(ecoop_last_error()).find("no_such_file.json") !=
        std::string::npos);

  std::remove(path);
}

TEST_CASE("table accessors reject null handles") {
  CHECK(ecoop_table_rows(nullptr) == -1);
  CHECK(ecoop_table_cols(nullptr) == -1);
  CHECK(ecoop_table_meta_count(nullptr) == -1);
  CHECK(ecoop_table_column_name(nullptr, 0) == nullptr);
  double out = 0.0;
  CHECK(ecoop_table_value(nullptr, 0, 0, &out) == ECOOP_EINVAL);
  CHECK(ecoop_table_write_csv(nullptr, "-", 0) == ECOOP_EINVAL);
  ecoop_table_free(nullptr);  // must be a no-op
}
