#pragma once

#include <cstddef>
#include <vector>

#include "cachecast/cache_state.hpp"
#include "cachecast/phy.hpp"
#include "cachecast/value_table.hpp"

namespace cachecast {

struct ProactiveSettings {
  bool enabled = false;
  double period = 1.0;      // T_p, seconds between opportunities
  double tau_prime = 1.1;   // selection threshold, > 1

  void validate() const;
};

/// One file considered at a proactive opportunity.
struct ProactiveFileContext {
  std::size_t file_index = 0;
  double arrival_rate = 0.0;
  double remaining_lifetime = 0.0;
  double segment_bits = 1.0;
  const CacheState* state = nullptr;
  const FileValueView* values = nullptr;
};

struct ProactiveDecision {
  bool transmit = false;
  std::size_t file_index = 0;
  int segment = 0;
  double power = 0.0;
  double symbols = 0.0;
  std::vector<std::size_t> receiving_caches;
  double gain_ratio = 0.0;  // best ratio found, whether or not selected
};

/// Poisson mixture of linear-approximation values: the expected remaining
/// cost of a file if nothing further is placed proactively.
double remaining_cost_estimate(const CacheState& state, double remaining_lifetime,
                               double arrival_rate, const FileValueView& view,
                               double epsilon);

/// Best gain ratio for multicasting one segment of one file under the current
/// cache-node shadowing draws: ratio of remaining cost without the placement
/// to placement cost plus remaining cost with it. Targets are undecoded
/// nodes; nodes at or above the target's statistic decode for free.
struct CandidateResult {
  double gain_ratio = 0.0;  // 0 when no feasible target
  double power = 0.0;
  double symbols = 0.0;
  std::vector<std::size_t> receiving_caches;
};
CandidateResult evaluate_candidate(const ProactiveFileContext& file, int segment,
                                   const std::vector<double>& cache_theta,
                                   const PhyConfig& phy, double epsilon);

/// Argmax of the gain ratio over all (file, segment) pairs with a zero bit;
/// transmits only when the ratio reaches tau_prime. Ties resolve by
/// (file index, segment index, node index).
ProactiveDecision proactive_decide(const std::vector<ProactiveFileContext>& files,
                                   const std::vector<double>& cache_theta,
                                   const PhyConfig& phy, double tau_prime,
                                   double epsilon);

}  // namespace cachecast
