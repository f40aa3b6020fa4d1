#pragma once

#include <vector>

#include "cachecast/cache_state.hpp"
#include "cachecast/scenario.hpp"

namespace cachecast {

/// Exact finite-horizon values on a discretized instance: backward induction
/// over the full cache-state space against the shared scenario set. Test and
/// bound-check oracle only; the state space is capped at 2^12.
struct ExactValues {
  int num_caches = 0;
  int num_segments = 1;
  int max_stages = 0;
  std::vector<std::vector<double>> value;  // [stages][packed state], stages 0..max

  double at(int stages, const CacheState& state) const {
    return value.at(stages).at(state.pack());
  }
};

ExactValues exact_value_iteration(const ScenarioSet& scn, int num_caches,
                                  int num_segments, int max_stages);

}  // namespace cachecast
