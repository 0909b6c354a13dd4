#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "channel.hpp"
#include "inventory.hpp"

namespace ecoop {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

double read_number(const json& section, const char* section_name, const char* key,
                   double fallback) {
  if (!section.contains(key)) return fallback;
  const auto& v = section.at(key);
  if (!v.is_number()) {
    fail(std::string(section_name) + "." + key + " must be a number");
  }
  return v.get<double>();
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string canonical_string(const ScenarioConfig& c) {
  std::ostringstream out;
  out.precision(17);
  if (!c.preset.empty()) {
    out << "preset:" << c.preset;
    return out.str();
  }
  out << c.mu << '|' << c.tau << '|' << c.energy_per_packet << '|' << c.mass_tol << '|'
      << c.holding << '|' << c.shortage << '|' << c.purchase << '|' << c.setup << '|'
      << c.existing_stock << '|' << c.rate_threshold << '|' << c.bandwidth << '|'
      << c.noise_psd << '|' << c.k_d_override << '|' << c.cost_weight << '|'
      << c.supplier_traffic << '|' << c.supplier_required_power << '|'
      << c.supplier_stored << '|';
  if (c.cost_coefficient) out << *c.cost_coefficient;
  out << '|' << c.game << '|' << c.suppliers << '|' << c.leaders << '|' << c.followers
      << '|';
  for (double h : c.histories) out << h << ';';
  out << '|' << c.convergence_tol << '|' << c.stability_rounds << '|'
      << c.max_iterations << '|' << c.damping << '|' << c.slots << '|' << c.seed << '|'
      << c.node_count << '|' << c.transfer_efficiency << '|' << c.harvest << '|'
      << c.harvest_step << '|' << c.initial_stored << '|' << c.stored_step << '|'
      << c.mu_step << '|' << c.precision;
  return out.str();
}

void stamp(ReportTable& table, const std::string& canonical) {
  table.add_metadata("version", kToolVersion);
  std::ostringstream hash;
  hash << std::hex << fnv1a(canonical);
  table.add_metadata("scenario_hash", hash.str());
}

// Uniform case-study market: k_d = 357, pinned cost coefficient 4, unless the
// caller supplies a config-derived scenario instead.
MarketScenario uniform_scenario(GameKind game, std::size_t count, std::size_t leaders,
                                std::vector<double> seeds) {
  MarketScenario scenario;
  scenario.demander_efficiency = 357.0;
  scenario.game = game;
  for (std::size_t i = 0; i < count; ++i) {
    SupplierProfile profile;
    profile.stored_energy = 160.0;
    profile.required_power = 120.0;
    profile.traffic_quantity = 15.0;
    profile.cost_weight = 0.5;
    profile.cost_override = 4.0;
    profile.initial_offer = i < seeds.size() ? seeds[i] : 0.0;
    scenario.suppliers.push_back(profile);
  }
  if (game == GameKind::kStackelberg) {
    scenario.leaders = leaders;
    scenario.followers = count - leaders;
  }
  scenario.convergence_tol = 1e-9;
  scenario.stability_rounds = 3;
  scenario.max_iterations = 10000;
  scenario.damping = 0.5;  // keeps simultaneous updates contractive up to M = 20
  return scenario;
}

void append_trace(ReportTable& table, const EquilibriumResult& result,
                  const std::vector<std::string>& labels) {
  std::vector<double> iteration;
  for (std::size_t t = 0; t < result.trace.size(); ++t) {
    iteration.push_back(static_cast<double>(t));
  }
  table.add_column("iteration", std::move(iteration));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<double> series;
    for (const auto& row : result.trace) series.push_back(row[i]);
    table.add_column(labels[i], std::move(series));
  }
  table.add_metadata("iterations", std::to_string(result.iterations));
  table.add_metadata("converged", result.converged ? "true" : "false");
  table.add_metadata("total_volume", format_significant(result.total_volume, 12));
  table.add_metadata("price", format_significant(result.price, 12));
}

ReportTable inventory_cost_figure(const std::string& name, const CostParams& costs) {
  ReportTable table(name);
  const ExistingStock no_stock(0.0);
  const int max_level = 40;
  std::vector<double> levels;
  for (int s = 0; s <= max_level; ++s) levels.push_back(static_cast<double>(s));
  table.add_column("S", levels);
  for (double traffic : {5.0, 10.0, 20.0}) {
    const TrafficProcess proc(traffic, 1.0, 1.0);
    const DemandDistribution dist = demand_distribution(proc);
    std::vector<double> cost_curve;
    for (int s = 0; s <= max_level; ++s) {
      cost_curve.push_back(expected_cost(static_cast<double>(s), dist, costs, no_stock));
    }
    const std::string suffix = std::to_string(static_cast<int>(traffic));
    table.add_column("cost_mu_tau_" + suffix, std::move(cost_curve));
    const double optimum = optimal_inventory(dist, costs);
    table.add_metadata("optimal_S_mu_tau_" + suffix, format_significant(optimum, 12));
    table.add_metadata("min_cost_mu_tau_" + suffix,
                       format_significant(expected_cost(optimum, dist, costs, no_stock), 12));
  }
  table.add_metadata("holding", format_significant(costs.holding, 12));
  table.add_metadata("shortage", format_significant(costs.shortage, 12));
  return table;
}

ReportTable volume_sweep(const std::string& name, const std::vector<int>& counts,
                         bool prices) {
  ReportTable table(name);
  std::vector<double> suppliers, static_v, cournot_v, stackelberg1_v, stackelberg2_v;
  for (int count : counts) {
    const std::size_t m_count = static_cast<std::size_t>(count);
    const auto st = static_solve(uniform_scenario(GameKind::kStatic, m_count, 0, {}));
    const auto co = cournot_solve(uniform_scenario(GameKind::kCournot, m_count, 0, {}));
    const auto s1 =
        stackelberg_solve(uniform_scenario(GameKind::kStackelberg, m_count, 1, {}));
    const auto s2 = stackelberg_solve(
        uniform_scenario(GameKind::kStackelberg, m_count, m_count - 1, {}));
    suppliers.push_back(static_cast<double>(count));
    static_v.push_back(prices ? st.price : st.total_volume);
    cournot_v.push_back(prices ? co.price : co.total_volume);
    stackelberg1_v.push_back(prices ? s1.price : s1.total_volume);
    stackelberg2_v.push_back(prices ? s2.price : s2.total_volume);
  }
  const std::string kind = prices ? "price" : "total";
  table.add_column("suppliers", std::move(suppliers));
  table.add_column("static_" + kind, std::move(static_v));
  table.add_column("cournot_" + kind, std::move(cournot_v));
  table.add_column("stackelberg1_" + kind, std::move(stackelberg1_v));
  table.add_column("stackelberg2_" + kind, std::move(stackelberg2_v));
  table.add_metadata("demander_efficiency", "357");
  table.add_metadata("cost_coefficient", "4");
  return table;
}

ReportTable make_preset(const std::string& name) {
  if (name == "fig2") return inventory_cost_figure(name, CostParams(4.0, 3.0));
  if (name == "fig3") return inventory_cost_figure(name, CostParams(1.0, 4.0));
  if (name == "fig4") {
    auto scenario = uniform_scenario(GameKind::kCournot, 4, 0, {29.5, 21.6, 24.7, 23.4});
    scenario.convergence_tol = 1e-6;
    scenario.damping = 1.0;
    ReportTable table(name);
    append_trace(table, cournot_solve(scenario), {"p1", "p2", "p3", "p4"});
    return table;
  }
  if (name == "fig5") {
    auto scenario = uniform_scenario(GameKind::kStackelberg, 6, 3,
                                     {29.5, 21.6, 24.7, 23.4, 20.4, 26.4});
    scenario.convergence_tol = 1e-6;
    scenario.damping = 1.0;
    ReportTable table(name);
    append_trace(table, stackelberg_solve(scenario),
                 {"b1", "b2", "b3", "p1", "p2", "p3"});
    return table;
  }
  if (name == "fig6" || name == "fig8") {
    std::vector<int> counts;
    for (int m = 2; m <= 20; ++m) counts.push_back(m);
    return volume_sweep(name, counts, name == "fig8");
  }
  if (name == "fig7") return volume_sweep(name, {5, 6, 9, 10}, false);
  std::string known;
  for (const auto& p : preset_names()) known += (known.empty() ? "" : ", ") + p;
  throw std::invalid_argument("unknown preset '" + name + "'; valid presets: " + known);
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!preset.empty()) {
    make_preset(preset);  // throws on unknown names
    return;
  }
  TrafficProcess(mu, tau, energy_per_packet);
  if (!(mass_tol > 0.0 && mass_tol <= 1e-6)) fail("traffic.mass_tol must be in (0, 1e-6]");
  CostParams(holding, shortage, purchase, setup);
  ExistingStock{existing_stock};
  ChannelParams(bandwidth, noise_psd, rate_threshold);
  parse_game_kind(game);
  if (suppliers < 1) fail("market.suppliers must be >= 1");
  if (static_cast<int>(histories.size()) > suppliers) {
    fail("market.histories has more entries than market.suppliers");
  }
  for (double h : histories) {
    if (!(h >= 0.0)) fail("market.histories entries must be >= 0");
  }
  if (parse_game_kind(game) == GameKind::kStackelberg &&
      leaders + followers != suppliers) {
    fail("market.leaders + market.followers must equal market.suppliers");
  }
  if (!(convergence_tol > 0.0)) fail("market.tol must be > 0");
  if (stability_rounds < 1) fail("market.stability_rounds must be >= 1");
  if (max_iterations < 1) fail("market.max_iterations must be >= 1");
  if (!(damping > 0.0 && damping <= 1.0)) fail("market.damping must be in (0, 1]");
  if (k_d_override < 0.0) fail("market.k_d must be >= 0");
  if (k_d_override == 0.0 && rate_threshold <= 0.0) {
    fail("channel.rate_threshold must be > 0 when market.k_d is not set");
  }
  if (slots < 0) fail("sim.slots must be >= 0");
  if (node_count < 1) fail("sim.nodes must be >= 1");
  if (!(transfer_efficiency > 0.0 && transfer_efficiency <= 1.0)) {
    fail("sim.transfer_efficiency must be in (0, 1]");
  }
  if (!(harvest >= 0.0)) fail("sim.harvest must be >= 0");
  if (precision < 1 || precision > 17) fail("output.precision must be in [1, 17]");
  to_market_scenario(*this).validate();
}

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");

  ScenarioConfig cfg;
  if (doc.contains("preset")) {
    if (!doc.at("preset").is_string()) fail("preset must be a string");
    cfg.preset = doc.at("preset").get<std::string>();
    cfg.validate();
    return cfg;
  }

  const json empty = json::object();
  auto section = [&](const char* key) -> const json& {
    if (!doc.contains(key)) return empty;
    if (!doc.at(key).is_object()) fail(std::string(key) + " must be an object");
    return doc.at(key);
  };

  const json& traffic = section("traffic");
  cfg.mu = read_number(traffic, "traffic", "mu", cfg.mu);
  cfg.tau = read_number(traffic, "traffic", "tau", cfg.tau);
  cfg.energy_per_packet = read_number(traffic, "traffic", "a", cfg.energy_per_packet);
  cfg.mass_tol = read_number(traffic, "traffic", "mass_tol", cfg.mass_tol);

  const json& costs = section("costs");
  cfg.holding = read_number(costs, "costs", "holding", cfg.holding);
  cfg.shortage = read_number(costs, "costs", "shortage", cfg.shortage);
  cfg.purchase = read_number(costs, "costs", "purchase", cfg.purchase);
  cfg.setup = read_number(costs, "costs", "setup", cfg.setup);
  cfg.existing_stock = read_number(costs, "costs", "existing_stock", cfg.existing_stock);

  const json& channel = section("channel");
  cfg.rate_threshold = read_number(channel, "channel", "rate_threshold", cfg.rate_threshold);
  cfg.bandwidth = read_number(channel, "channel", "bandwidth", cfg.bandwidth);
  cfg.noise_psd = read_number(channel, "channel", "noise_psd", cfg.noise_psd);

  const json& market = section("market");
  cfg.k_d_override = read_number(market, "market", "k_d", cfg.k_d_override);
  cfg.cost_weight = read_number(market, "market", "w", cfg.cost_weight);
  cfg.supplier_traffic = read_number(market, "market", "traffic_quantity", cfg.supplier_traffic);
  cfg.supplier_required_power =
      read_number(market, "market", "required_power", cfg.supplier_required_power);
  cfg.supplier_stored = read_number(market, "market", "stored_energy", cfg.supplier_stored);
  if (market.contains("cost_coefficient")) {
    cfg.cost_coefficient = read_number(market, "market", "cost_coefficient", 0.0);
  }
  if (market.contains("game")) {
    if (!market.at("game").is_string()) fail("market.game must be a string");
    cfg.game = market.at("game").get<std::string>();
  }
  cfg.suppliers = static_cast<int>(read_number(market, "market", "suppliers", cfg.suppliers));
  cfg.leaders = static_cast<int>(read_number(market, "market", "leaders", cfg.leaders));
  cfg.followers = static_cast<int>(read_number(market, "market", "followers", cfg.followers));
  if (market.contains("histories")) {
    if (!market.at("histories").is_array()) fail("market.histories must be an array");
    cfg.histories.clear();
    for (const auto& h : market.at("histories")) {
      if (!h.is_number()) fail("market.histories entries must be numbers");
      cfg.histories.push_back(h.get<double>());
    }
  }
  cfg.convergence_tol = read_number(market, "market", "tol", cfg.convergence_tol);
  cfg.stability_rounds =
      static_cast<int>(read_number(market, "market", "stability_rounds", cfg.stability_rounds));
  cfg.max_iterations =
      static_cast<int>(read_number(market, "market", "max_iterations", cfg.max_iterations));
  cfg.damping = read_number(market, "market", "damping", cfg.damping);

  const json& sim = section("sim");
  cfg.slots = static_cast<int>(read_number(sim, "sim", "slots", cfg.slots));
  cfg.seed = static_cast<std::uint64_t>(read_number(sim, "sim", "seed", 1.0));
  cfg.node_count = static_cast<int>(read_number(sim, "sim", "nodes", cfg.node_count));
  cfg.transfer_efficiency =
      read_number(sim, "sim", "transfer_efficiency", cfg.transfer_efficiency);
  cfg.harvest = read_number(sim, "sim", "harvest", cfg.harvest);
  cfg.harvest_step = read_number(sim, "sim", "harvest_step", cfg.harvest_step);
  cfg.initial_stored = read_number(sim, "sim", "initial_stored", cfg.initial_stored);
  cfg.stored_step = read_number(sim, "sim", "stored_step", cfg.stored_step);
  cfg.mu_step = read_number(sim, "sim", "mu_step", cfg.mu_step);

  const json& output = section("output");
  cfg.precision = static_cast<int>(read_number(output, "output", "precision", cfg.precision));

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

GameKind parse_game_kind(const std::string& name) {
  if (name == "static") return GameKind::kStatic;
  if (name == "cournot") return GameKind::kCournot;
  if (name == "stackelberg") return GameKind::kStackelberg;
  fail("market.game must be one of static, cournot, stackelberg (got '" + name + "')");
}

double config_demander_efficiency(const ScenarioConfig& config) {
  if (config.k_d_override > 0.0) return config.k_d_override;
  const ChannelParams ch(config.bandwidth, config.noise_psd, config.rate_threshold);
  return demander_efficiency(ch) * 1e-6;  // bits/J -> bits per uW-slot
}

MarketScenario to_market_scenario(const ScenarioConfig& config) {
  MarketScenario scenario;
  scenario.demander_efficiency = config_demander_efficiency(config);
  scenario.game = parse_game_kind(config.game);
  for (int i = 0; i < config.suppliers; ++i) {
    SupplierProfile profile;
    profile.stored_energy = config.supplier_stored;
    profile.required_power = config.supplier_required_power;
    profile.traffic_quantity = config.supplier_traffic;
    profile.cost_weight = config.cost_weight;
    profile.cost_override = config.cost_coefficient;
    profile.initial_offer =
        static_cast<std::size_t>(i) < config.histories.size() ? config.histories[i] : 0.0;
    scenario.suppliers.push_back(profile);
  }
  if (scenario.game == GameKind::kStackelberg) {
    scenario.leaders = static_cast<std::size_t>(config.leaders);
    scenario.followers = static_cast<std::size_t>(config.followers);
  }
  scenario.convergence_tol = config.convergence_tol;
  scenario.stability_rounds = config.stability_rounds;
  scenario.max_iterations = config.max_iterations;
  scenario.damping = config.damping;
  return scenario;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig2", "fig3", "fig4", "fig5",
                                                 "fig6", "fig7", "fig8"};
  return names;
}

ReportTable run_preset(const std::string& name) {
  ReportTable table = make_preset(name);
  stamp(table, "preset:" + name);
  return table;
}

ReportTable run_inventory(const ScenarioConfig& config) {
  const TrafficProcess proc(config.mu, config.tau, config.energy_per_packet);
  const DemandDistribution dist = demand_distribution(proc, config.mass_tol);
  const CostParams costs(config.holding, config.shortage, config.purchase, config.setup);
  const ExistingStock stock(config.existing_stock);

  ReportTable table("inventory");
  std::vector<double> levels, cost_curve;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    levels.push_back(dist.level(k));
    cost_curve.push_back(expected_cost(dist.level(k), dist, costs, stock));
  }
  table.add_column("S", std::move(levels));
  table.add_column("expected_cost", std::move(cost_curve));

  const InventoryPolicy policy = solve_policy(dist, costs, stock);
  table.add_metadata("critical_ratio", format_significant(critical_ratio(costs), 12));
  table.add_metadata("optimal_S", format_significant(policy.order_up_to, 12));
  table.add_metadata("reorder_point", format_significant(policy.reorder_point, 12));
  table.add_metadata("min_cost", format_significant(policy.expected_cost, 12));
  stamp(table, canonical_string(config));
  return table;
}

ReportTable run_market(const ScenarioConfig& config) {
  const MarketScenario scenario = to_market_scenario(config);
  const EquilibriumResult result = solve(scenario);
  ReportTable table("market");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < scenario.suppliers.size(); ++i) {
    labels.push_back("p" + std::to_string(i + 1));
  }
  append_trace(table, result, labels);
  table.add_metadata("game", config.game);
  table.add_metadata("demander_efficiency",
                     format_significant(scenario.demander_efficiency, 12));
  stamp(table, canonical_string(config));
  return table;
}

namespace {

Simulator build_simulator(const ScenarioConfig& config, std::uint64_t seed) {
  const ChannelParams channel(config.bandwidth, config.noise_psd, config.rate_threshold);
  const CostParams costs(config.holding, config.shortage, config.purchase, config.setup);
  std::vector<NodeState> nodes;
  for (int i = 0; i < config.node_count; ++i) {
    const TrafficProcess traffic(config.mu + i * config.mu_step, config.tau,
                                 config.energy_per_packet);
    const double stored = config.initial_stored + i * config.stored_step;
    const double harvest = config.harvest + i * config.harvest_step;
    nodes.emplace_back(i, stored, harvest, traffic, channel, costs);
  }
  SimConfig sim;
  sim.seed = seed;
  sim.transfer_efficiency = config.transfer_efficiency;
  sim.game = parse_game_kind(config.game);
  sim.demander_efficiency_override = config.k_d_override;
  sim.cost_weight = config.cost_weight;
  sim.cost_override = config.cost_coefficient;
  sim.convergence_tol = config.convergence_tol;
  sim.stability_rounds = config.stability_rounds;
  sim.max_iterations = config.max_iterations;
  sim.damping = config.damping;
  return Simulator(std::move(nodes), sim);
}

void append_sim_log(ReportTable& table, const Simulator& sim) {
  std::vector<double> slot, node, stored, harvested, consumed, transferred, price;
  for (const auto& row : sim.log()) {
    slot.push_back(row.slot);
    node.push_back(row.node);
    stored.push_back(row.stored);
    harvested.push_back(row.harvested);
    consumed.push_back(row.consumed);
    transferred.push_back(row.transferred);
    price.push_back(row.price);
  }
  table.add_column("slot", std::move(slot));
  table.add_column("node", std::move(node));
  table.add_column("stored", std::move(stored));
  table.add_column("harvested", std::move(harvested));
  table.add_column("consumed", std::move(consumed));
  table.add_column("transferred", std::move(transferred));
  table.add_column("price", std::move(price));
  table.add_metadata("total_harvested", format_significant(sim.total_harvested(), 12));
  table.add_metadata("total_consumed", format_significant(sim.total_consumed(), 12));
  table.add_metadata("total_transfer_loss",
                     format_significant(sim.total_transfer_loss(), 12));
  table.add_metadata("total_unmet_demand",
                     format_significant(sim.total_unmet_demand(), 12));
  table.add_metadata("conservation_residual",
                     format_significant(sim.conservation_residual(), 12));
}

}  // namespace

ReportTable run_sim(const ScenarioConfig& config) {
  Simulator sim = build_simulator(config, config.seed);
  sim.run(config.slots);
  ReportTable table("sim");
  append_sim_log(table, sim);
  table.add_metadata("seed", std::to_string(config.seed));
  stamp(table, canonical_string(config));
  return table;
}

ReportTable run_config(const ScenarioConfig& config) {
  if (!config.preset.empty()) return run_preset(config.preset);

  const TrafficProcess proc(config.mu, config.tau, config.energy_per_packet);
  const DemandDistribution dist = demand_distribution(proc, config.mass_tol);
  const CostParams costs(config.holding, config.shortage, config.purchase, config.setup);
  const InventoryPolicy policy =
      solve_policy(dist, costs, ExistingStock(config.existing_stock));

  ReportTable table("run");
  const MarketScenario scenario = to_market_scenario(config);
  const EquilibriumResult market = solve(scenario);
  if (config.slots > 0) {
    Simulator sim = build_simulator(config, config.seed);
    sim.run(config.slots);
    append_sim_log(table, sim);
    table.add_metadata("seed", std::to_string(config.seed));
  } else {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < scenario.suppliers.size(); ++i) {
      labels.push_back("p" + std::to_string(i + 1));
    }
    append_trace(table, market, labels);
  }
  table.add_metadata("optimal_S", format_significant(policy.order_up_to, 12));
  table.add_metadata("reorder_point", format_significant(policy.reorder_point, 12));
  table.add_metadata("min_cost", format_significant(policy.expected_cost, 12));
  table.add_metadata("market_total", format_significant(market.total_volume, 12));
  table.add_metadata("market_price", format_significant(market.price, 12));
  stamp(table, canonical_string(config));
  return table;
}

}  // namespace ecoop
