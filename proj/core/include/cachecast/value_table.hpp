#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cachecast/cache_state.hpp"
#include "cachecast/scenario.hpp"
#include "cachecast/traffic.hpp"

namespace cachecast {

/// Result of one expected Bellman backup over a scenario set. Stage cost and
/// next-stage value are averaged separately (their sum is the value) so that
/// evaluators sharing a scenario set produce bit-identical numbers on states
/// where they coincide.
struct BackupResult {
  double mean_cost = 0.0;
  double mean_next = 0.0;
  double stderr_value = 0.0;  // sd of per-scenario (cost + next) / sqrt(K)

  double value() const { return mean_cost + mean_next; }
};

/// One-step optimal backup from `state`: per scenario, builds the demanded
/// segment set, enumerates per-segment multicast targets (the requesting user,
/// or any undecoded cache with strictly worse statistic; every undecoded cache
/// at or above the target's statistic decodes for free), and minimizes stage
/// cost plus `next` evaluated on the successor cache state. Infeasible targets
/// are skipped. Ties prefer the user-only action (fewest extra receivers).
///
/// `next` is invoked as next(const CacheState&) on an in-place successor.
BackupResult stage_backup(const CacheState& state, const ScenarioSet& scn,
                          const std::function<double(const CacheState&)>& next);

/// Reference-state value functions of the finite-horizon MDP for one file:
/// v_star[N] is the N-stage cost from the everything-cached state, v_one[i][N]
/// from the state missing exactly one segment at cache i (independent of which
/// segment). Built by backward recursion over a shared scenario set.
struct ValueTable {
  int num_caches = 0;
  int num_segments = 1;
  double segment_bits = 1.0;  // reference payload
  int max_stages = 0;

  std::vector<double> v_star;               // index n-1 holds stage count n
  std::vector<std::vector<double>> v_one;   // [cache][n-1]
  std::vector<double> v_star_stderr;
  std::vector<std::vector<double>> v_one_stderr;

  // build provenance, carried through serialization
  std::uint64_t scenario_seed = 0;
  std::uint64_t scenario_budget = 0;

  double star(int stages) const;
  double one(int cache, int stages) const;
  double diff(int cache, int stages) const { return one(cache, stages) - star(stages); }

  void check_range(int stages) const;
};

ValueTable build_value_table(const ScenarioSet& scn, int num_segments, int max_stages,
                             int num_workers = 1);

/// Cross-file evaluation of a table built for a reference file: base values
/// scale with total payload, per-missing-bit differences with segment size.
class FileValueView {
 public:
  FileValueView(const ValueTable& table, int file_segments, double file_segment_bits)
      : table_(&table),
        base_scale_(file_segments * file_segment_bits /
                    (table.num_segments * table.segment_bits)),
        diff_scale_(file_segment_bits / table.segment_bits) {}

  const ValueTable& table() const { return *table_; }
  int max_stages() const { return table_->max_stages; }

  double star(int stages) const { return base_scale_ * table_->star(stages); }
  double diff(int cache, int stages) const {
    return diff_scale_ * table_->diff(cache, stages);
  }

  /// Linear value approximation: star value plus one increment per zero bit.
  double approx_value(const CacheState& state, int stages) const;

 private:
  const ValueTable* table_;
  double base_scale_;
  double diff_scale_;
};

/// Linear approximation for the table's own reference file.
double approx_value(const CacheState& state, int stages, const ValueTable& table);

/// Cross-file approximation for file k evaluated on file f's table.
double approx_value_cross_file(const CacheState& state, int stages,
                               const ValueTable& table, int file_segments,
                               double file_segment_bits);

struct ValueBounds {
  double lower = 0.0;
  double refined_upper = 0.0;
  double upper = 0.0;
};

/// Lower bound, linear-approximation upper bound, and the refined upper bound
/// obtained by one Bellman backup against the approximation, all on the
/// table's scenario set.
ValueBounds bounds(const CacheState& state, int stages, const ValueTable& table,
                   const ScenarioSet& scn);

/// Poisson weights pmf(mean, 0..horizon) with horizon = truncation_horizon
/// capped at max_stages.
std::vector<double> poisson_mixture_weights(double mean, double epsilon,
                                            int max_stages);

/// Analytic lower bound on the remaining cost over a lifetime: Poisson
/// mixture of the per-stage lower bounds, zero contribution at N = 0.
double cost_to_go_lower_bound(const CacheState& state, double remaining_lifetime,
                              double arrival_rate, const FileValueView& view,
                              double epsilon);

/// Versioned flat-file serialization (columns: N, v_star, v_one[1..N_C]).
void save_value_table(const ValueTable& table, std::ostream& out);
void save_value_table(const ValueTable& table, const std::string& path);
ValueTable load_value_table(std::istream& in);
ValueTable load_value_table_file(const std::string& path);

}  // namespace cachecast
