#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cachecast/proactive.hpp"
#include "cachecast/reactive.hpp"
#include "cachecast/traffic.hpp"
#include "cachecast/value_table.hpp"

namespace cachecast {

/// Policy selection string: base["+proactive"], base in
/// {proposed, baseline1, baseline2}, with an optional table source for the
/// proposed policy: proposed:uniform (tables built assuming uniform users)
/// or proposed:learned (tables estimated online from a request stream).
struct PolicySpec {
  enum class Base { Proposed, Baseline1, Baseline2 };
  enum class Tables { True, Uniform, Learned };

  Base base = Base::Proposed;
  Tables tables = Tables::True;
  bool proactive = false;

  std::string label() const;
  static PolicySpec parse(const std::string& text);
  bool needs_tables() const { return base == Base::Proposed || proactive; }
};

std::unique_ptr<ReactivePolicy> make_policy(PolicySpec::Base base);

/// Everything one episode needs. The caller owns all referenced objects.
struct SimInputs {
  const std::vector<FileSpec>* files = nullptr;
  const CellLayout* layout = nullptr;
  const UserDistribution* dist = nullptr;  // true user law driving the draws
  const ShadowingModel* shadowing = nullptr;
  double interference = 0.0;
  const PhyConfig* phy = nullptr;
  double truncation_epsilon = 1e-6;
  const ReactivePolicy* policy = nullptr;
  const ValueTable* table = nullptr;  // value source for proposed/proactive
  ProactiveSettings proactive;
};

struct SegmentRecord {
  int segment = 0;
  double power = 0.0;
  double symbols = 0.0;  // transmitted (integer) symbol count
  std::vector<std::size_t> receivers;
};

struct EventRecord {
  double time = 0.0;
  bool proactive = false;
  int file_index = 0;
  int ordinal = 0;   // request index within the file; 0 for proactive
  bool covered = false;
  double energy = 0.0;
  double symbols = 0.0;
  std::vector<SegmentRecord> segments;
};

struct EpisodeResult {
  std::uint64_t episode_index = 0;
  double total_energy = 0.0;
  double total_symbols = 0.0;
  std::vector<double> file_energy;
  std::vector<double> file_symbols;
  std::vector<EventRecord> events;  // populated only when requested

  double total_cost(double symbol_weight) const {
    return total_energy + symbol_weight * total_symbols;
  }
  double file_cost(std::size_t i, double symbol_weight) const {
    return file_energy[i] + symbol_weight * file_symbols[i];
  }
};

/// Deterministic in (inputs, master_seed, episode_index): requests and
/// proactive draws come from fixed substreams, so the same seed replays the
/// same event log under any policy.
EpisodeResult run_episode(const SimInputs& inputs, std::uint64_t master_seed,
                          std::uint64_t episode_index, bool keep_events = false);

struct SeedStats {
  std::vector<double> per_seed_cost;
  std::vector<std::vector<double>> per_seed_file_cost;  // [seed][file]
  double mean = 0.0;
  double stderr_mean = 0.0;

  int n() const { return static_cast<int>(per_seed_cost.size()); }
};

/// Independent episodes 0..n_seeds-1 in parallel; aggregation is in episode
/// order, so results do not depend on the worker count.
SeedStats run_many(const SimInputs& inputs, std::uint64_t master_seed, int n_seeds,
                   int workers = 1);

double mean_of(const std::vector<double>& xs);
double stderr_of(const std::vector<double>& xs);

}  // namespace cachecast
