#include "cachecast/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "cachecast/sim.hpp"

namespace cachecast {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object())
    throw std::invalid_argument("config: " + where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key))
      throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
  }
}

template <class T>
T require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key))
    throw std::invalid_argument("config: missing key '" + key + "' in " + where);
  return obj.at(key).get<T>();
}

template <class T>
T optional_or(const json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  return obj.at(key).get<T>();
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

CellLayout ExperimentConfig::layout() const {
  CellLayout l;
  l.cell_radius = cell_radius;
  l.pathloss_exponent = pathloss_exponent;
  if (caches.explicit_nodes) {
    l.cache_nodes = caches.nodes;
  } else {
    l.cache_nodes = place_caches_annulus(caches.count, caches.service_radius,
                                         caches.annulus_min, caches.annulus_max,
                                         cell_radius, caches.placement_seed);
  }
  return l;
}

int ExperimentConfig::required_max_stages() const {
  if (table_max_stages > 0) return table_max_stages;
  double worst_mean = 0.0;
  for (const auto& f : files) {
    worst_mean = std::max(worst_mean, f.mean_requests());
    if (sweep.enabled && sweep.parameter == "lambda_t") {
      for (double v : sweep.values) worst_mean = std::max(worst_mean, v);
    }
  }
  return std::max(1, truncation_horizon(worst_mean, truncation_epsilon));
}

void ExperimentConfig::validate() const {
  phy.validate();
  if (interference < 0.0) throw std::invalid_argument("interference must be >= 0");
  shadowing.validate();
  const CellLayout l = layout();
  l.validate();
  users.validate(l);
  if (l.num_caches() > static_cast<std::size_t>(CacheState::kMaxCaches))
    throw std::invalid_argument("too many cache nodes (limit 32)");

  if (files.empty()) throw std::invalid_argument("file catalog must not be empty");
  for (const auto& f : files) f.validate();
  if (!(truncation_epsilon > 0.0) || truncation_epsilon >= 1.0)
    throw std::invalid_argument("truncation_epsilon must be in (0, 1)");
  proactive.validate();

  if (seeds < 1) throw std::invalid_argument("sim.seeds must be >= 1");
  for (const auto& p : policies) PolicySpec::parse(p);  // throws on bad names

  if (sweep.enabled) {
    if (sweep.parameter != "lambda_t" && sweep.parameter != "proactive_period")
      throw std::invalid_argument("sweep.parameter must be lambda_t or proactive_period");
    if (sweep.values.empty()) throw std::invalid_argument("sweep.values must not be empty");
    for (double v : sweep.values) {
      if (!(v > 0.0)) throw std::invalid_argument("sweep values must be > 0");
      if (sweep.parameter == "lambda_t" && v > 650.0)
        throw std::invalid_argument("sweep lambda_t too large (Poisson sampler limit)");
    }
  }
  if (!(learn.tau_relative > 0.0))
    throw std::invalid_argument("learn.tau_relative must be > 0");

  // Peak-power feasibility of the worst admissible link: user at the cell
  // edge with the shadowing clamped at its floor. Guarantees every drawn
  // scenario and event is schedulable.
  const LinkState worst{pathloss_gain(cell_radius, pathloss_exponent),
                        shadowing.min_gain(), interference};
  if (!link_feasible(theta(worst, phy), phy))
    throw std::invalid_argument(
        "config infeasible: cell-edge link cannot be served at peak power; "
        "raise peak_power_dbm or lower noise/shadowing spread");
}

ExperimentConfig config_from_json(const json& j) {
  check_keys(j, {"phy", "cell", "caches", "users", "shadowing", "files", "tables",
                 "truncation_epsilon", "proactive", "sim", "sweep", "learn"},
             "root");
  ExperimentConfig cfg;

  const json& phy = j.at("phy");
  check_keys(phy, {"num_antennas", "stbc_rate", "noise_power_dbm", "peak_power_dbm",
                   "symbol_weight", "interference_dbm"}, "phy");
  cfg.num_antennas = require<int>(phy, "num_antennas", "phy");
  cfg.stbc_rate = require<double>(phy, "stbc_rate", "phy");
  cfg.noise_power_dbm = require<double>(phy, "noise_power_dbm", "phy");
  cfg.peak_power_dbm = require<double>(phy, "peak_power_dbm", "phy");
  cfg.symbol_weight = require<double>(phy, "symbol_weight", "phy");
  if (phy.contains("interference_dbm") && !phy.at("interference_dbm").is_null())
    cfg.interference_dbm = phy.at("interference_dbm").get<double>();

  const json& cell = j.at("cell");
  check_keys(cell, {"radius_m", "pathloss_exponent"}, "cell");
  cfg.cell_radius = require<double>(cell, "radius_m", "cell");
  cfg.pathloss_exponent = require<double>(cell, "pathloss_exponent", "cell");

  const json& caches = j.at("caches");
  if (caches.contains("nodes")) {
    check_keys(caches, {"nodes"}, "caches");
    cfg.caches.explicit_nodes = true;
    for (const auto& n : caches.at("nodes")) {
      check_keys(n, {"x", "y", "service_radius_m"}, "caches.nodes[]");
      cfg.caches.nodes.push_back({{require<double>(n, "x", "caches.nodes[]"),
                                   require<double>(n, "y", "caches.nodes[]")},
                                  require<double>(n, "service_radius_m", "caches.nodes[]")});
    }
  } else {
    check_keys(caches, {"count", "service_radius_m", "annulus_min_m", "annulus_max_m",
                        "placement_seed"}, "caches");
    cfg.caches.explicit_nodes = false;
    cfg.caches.count = require<std::size_t>(caches, "count", "caches");
    cfg.caches.service_radius = require<double>(caches, "service_radius_m", "caches");
    cfg.caches.annulus_min = require<double>(caches, "annulus_min_m", "caches");
    cfg.caches.annulus_max = require<double>(caches, "annulus_max_m", "caches");
    cfg.caches.placement_seed = require<std::uint64_t>(caches, "placement_seed", "caches");
  }

  const json& users = j.at("users");
  const std::string kind = require<std::string>(users, "kind", "users");
  if (kind == "uniform") {
    check_keys(users, {"kind"}, "users");
    cfg.users.kind = UserDistribution::Kind::Uniform;
  } else if (kind == "hotzones") {
    check_keys(users, {"kind", "background_mass", "zones"}, "users");
    cfg.users.kind = UserDistribution::Kind::HotzoneMixture;
    cfg.users.background_mass = require<double>(users, "background_mass", "users");
    for (const auto& z : users.at("zones")) {
      check_keys(z, {"x", "y", "radius_m", "mass"}, "users.zones[]");
      cfg.users.zones.push_back({{require<double>(z, "x", "users.zones[]"),
                                  require<double>(z, "y", "users.zones[]")},
                                 require<double>(z, "radius_m", "users.zones[]"),
                                 require<double>(z, "mass", "users.zones[]")});
    }
  } else {
    throw std::invalid_argument("users.kind must be 'uniform' or 'hotzones'");
  }

  const json& sh = j.at("shadowing");
  check_keys(sh, {"sigma_db", "clamp_sigmas"}, "shadowing");
  cfg.shadowing.sigma_db = require<double>(sh, "sigma_db", "shadowing");
  cfg.shadowing.clamp_sigmas = require<double>(sh, "clamp_sigmas", "shadowing");

  int next_id = 0;
  for (const auto& f : j.at("files")) {
    check_keys(f, {"arrival_rate", "lifetime_s", "start_s", "segments", "segment_bits"},
               "files[]");
    FileSpec spec;
    spec.file_id = next_id++;
    spec.arrival_rate = require<double>(f, "arrival_rate", "files[]");
    spec.lifetime = require<double>(f, "lifetime_s", "files[]");
    spec.start_time = optional_or<double>(f, "start_s", 0.0);
    spec.num_segments = require<int>(f, "segments", "files[]");
    spec.segment_bits = require<double>(f, "segment_bits", "files[]");
    cfg.files.push_back(spec);
  }

  if (j.contains("tables")) {
    const json& t = j.at("tables");
    check_keys(t, {"scenario_budget", "seed", "max_stages"}, "tables");
    cfg.table_budget = optional_or<std::size_t>(t, "scenario_budget", cfg.table_budget);
    cfg.table_seed = optional_or<std::uint64_t>(t, "seed", cfg.table_seed);
    cfg.table_max_stages = optional_or<int>(t, "max_stages", 0);
  }

  cfg.truncation_epsilon = optional_or<double>(j, "truncation_epsilon", 1e-6);

  if (j.contains("proactive")) {
    const json& p = j.at("proactive");
    check_keys(p, {"enabled", "period_s", "tau_prime"}, "proactive");
    cfg.proactive.enabled = optional_or<bool>(p, "enabled", false);
    cfg.proactive.period = optional_or<double>(p, "period_s", 1.0);
    cfg.proactive.tau_prime = optional_or<double>(p, "tau_prime", 1.1);
  }

  if (j.contains("sim")) {
    const json& s = j.at("sim");
    check_keys(s, {"seeds", "master_seed", "policies", "keep_event_logs"}, "sim");
    cfg.seeds = optional_or<int>(s, "seeds", cfg.seeds);
    cfg.master_seed = optional_or<std::uint64_t>(s, "master_seed", cfg.master_seed);
    if (s.contains("policies"))
      cfg.policies = s.at("policies").get<std::vector<std::string>>();
    cfg.keep_event_logs = optional_or<bool>(s, "keep_event_logs", false);
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    check_keys(s, {"parameter", "values"}, "sweep");
    cfg.sweep.enabled = true;
    cfg.sweep.parameter = require<std::string>(s, "parameter", "sweep");
    cfg.sweep.values = require<std::vector<double>>(s, "values", "sweep");
  }

  if (j.contains("learn")) {
    const json& s = j.at("learn");
    check_keys(s, {"events", "tau_relative", "seed"}, "learn");
    cfg.learn.events = optional_or<std::size_t>(s, "events", cfg.learn.events);
    cfg.learn.tau_relative = optional_or<double>(s, "tau_relative", cfg.learn.tau_relative);
    cfg.learn.seed = optional_or<std::uint64_t>(s, "seed", cfg.learn.seed);
  }

  // dBm -> watts, once.
  cfg.phy.num_antennas = cfg.num_antennas;
  cfg.phy.stbc_rate = cfg.stbc_rate;
  cfg.phy.noise_power = dbm_to_watts(cfg.noise_power_dbm);
  cfg.phy.peak_power = dbm_to_watts(cfg.peak_power_dbm);
  cfg.phy.symbol_weight = cfg.symbol_weight;
  cfg.interference = cfg.interference_dbm ? dbm_to_watts(*cfg.interference_dbm) : 0.0;

  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["phy"] = {{"num_antennas", cfg.num_antennas},
              {"stbc_rate", cfg.stbc_rate},
              {"noise_power_dbm", cfg.noise_power_dbm},
              {"peak_power_dbm", cfg.peak_power_dbm},
              {"symbol_weight", cfg.symbol_weight}};
  if (cfg.interference_dbm) j["phy"]["interference_dbm"] = *cfg.interference_dbm;
  j["cell"] = {{"radius_m", cfg.cell_radius}, {"pathloss_exponent", cfg.pathloss_exponent}};
  if (cfg.caches.explicit_nodes) {
    json nodes = json::array();
    for (const auto& n : cfg.caches.nodes)
      nodes.push_back({{"x", n.position.x},
                       {"y", n.position.y},
                       {"service_radius_m", n.service_radius}});
    j["caches"] = {{"nodes", nodes}};
  } else {
    j["caches"] = {{"count", cfg.caches.count},
                   {"service_radius_m", cfg.caches.service_radius},
                   {"annulus_min_m", cfg.caches.annulus_min},
                   {"annulus_max_m", cfg.caches.annulus_max},
                   {"placement_seed", cfg.caches.placement_seed}};
  }
  if (cfg.users.kind == UserDistribution::Kind::Uniform) {
    j["users"] = {{"kind", "uniform"}};
  } else {
    json zones = json::array();
    for (const auto& z : cfg.users.zones)
      zones.push_back({{"x", z.center.x},
                       {"y", z.center.y},
                       {"radius_m", z.radius},
                       {"mass", z.mass}});
    j["users"] = {{"kind", "hotzones"},
                  {"background_mass", cfg.users.background_mass},
                  {"zones", zones}};
  }
  j["shadowing"] = {{"sigma_db", cfg.shadowing.sigma_db},
                    {"clamp_sigmas", cfg.shadowing.clamp_sigmas}};
  json files = json::array();
  for (const auto& f : cfg.files)
    files.push_back({{"arrival_rate", f.arrival_rate},
                     {"lifetime_s", f.lifetime},
                     {"start_s", f.start_time},
                     {"segments", f.num_segments},
                     {"segment_bits", f.segment_bits}});
  j["files"] = files;
  j["tables"] = {{"scenario_budget", cfg.table_budget},
                 {"seed", cfg.table_seed},
                 {"max_stages", cfg.table_max_stages}};
  j["truncation_epsilon"] = cfg.truncation_epsilon;
  j["proactive"] = {{"enabled", cfg.proactive.enabled},
                    {"period_s", cfg.proactive.period},
                    {"tau_prime", cfg.proactive.tau_prime}};
  j["sim"] = {{"seeds", cfg.seeds},
              {"master_seed", cfg.master_seed},
              {"policies", cfg.policies},
              {"keep_event_logs", cfg.keep_event_logs}};
  if (cfg.sweep.enabled)
    j["sweep"] = {{"parameter", cfg.sweep.parameter}, {"values", cfg.sweep.values}};
  j["learn"] = {{"events", cfg.learn.events},
                {"tau_relative", cfg.learn.tau_relative},
                {"seed", cfg.learn.seed}};
  return j;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
  return config_from_json(j);
}

void save_config_file(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open config file for writing: " + path);
  f << config_to_json(cfg).dump(2) << "\n";
}

}  // namespace cachecast
