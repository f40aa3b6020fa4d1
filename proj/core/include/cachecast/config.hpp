#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cachecast/phy.hpp"
#include "cachecast/proactive.hpp"
#include "cachecast/topology.hpp"
#include "cachecast/traffic.hpp"

namespace cachecast {

/// Cache node placement: explicit coordinates, or seeded annulus placement.
struct CachePlacement {
  bool explicit_nodes = false;
  std::vector<CacheNode> nodes;  // explicit form
  std::size_t count = 0;         // generated form
  double service_radius = 0.0;
  double annulus_min = 0.0;
  double annulus_max = 0.0;
  std::uint64_t placement_seed = 0;
};

struct SweepSettings {
  bool enabled = false;
  std::string parameter;  // "lambda_t" | "proactive_period"
  std::vector<double> values;
};

struct LearnSettings {
  std::size_t events = 10000;
  double tau_relative = 0.001;  // tau = tau_relative * prior v_star[1]
  std::uint64_t seed = 4242;
};

/// Full experiment description. Powers are stored in dBm exactly as
/// configured (so serialization round-trips losslessly) and converted to
/// watts once, at load, into `phy` / `interference`.
struct ExperimentConfig {
  // phy (raw)
  int num_antennas = 8;
  double stbc_rate = 0.5;
  double noise_power_dbm = -96.0;
  double peak_power_dbm = 46.0;
  double symbol_weight = 1.0;
  std::optional<double> interference_dbm;

  // geometry
  double cell_radius = 500.0;
  double pathloss_exponent = 3.5;
  CachePlacement caches;
  UserDistribution users;
  ShadowingModel shadowing;

  std::vector<FileSpec> files;

  // value tables
  std::uint64_t table_seed = 1234;
  std::size_t table_budget = 20000;
  int table_max_stages = 0;  // 0 = derive from catalog and sweep

  double truncation_epsilon = 1e-6;
  ProactiveSettings proactive;

  // simulation
  int seeds = 20;
  std::uint64_t master_seed = 99;
  std::vector<std::string> policies{"proposed", "baseline1", "baseline2"};
  bool keep_event_logs = false;

  SweepSettings sweep;
  LearnSettings learn;

  // derived at load
  PhyConfig phy;
  double interference = 0.0;  // watts

  CellLayout layout() const;
  int required_max_stages() const;

  /// Enforces every module-level invariant, including guaranteed peak-power
  /// feasibility of the worst-case link under the clamped shadowing model.
  void validate() const;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config_file(const std::string& path);
void save_config_file(const ExperimentConfig& cfg, const std::string& path);

}  // namespace cachecast
