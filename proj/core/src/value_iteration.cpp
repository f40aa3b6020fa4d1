#include "cachecast/value_iteration.hpp"

#include <stdexcept>

#include "cachecast/value_table.hpp"

namespace cachecast {

ExactValues exact_value_iteration(const ScenarioSet& scn, int num_caches,
                                  int num_segments, int max_stages) {
  if (num_caches * num_segments > 12)
    throw std::invalid_argument(
        "exact_value_iteration: state space too large (limit 2^12 states)");
  if (max_stages < 1)
    throw std::invalid_argument("exact_value_iteration: max_stages must be >= 1");

  const std::size_t n_states = 1ULL << (num_caches * num_segments);
  ExactValues ev;
  ev.num_caches = num_caches;
  ev.num_segments = num_segments;
  ev.max_stages = max_stages;
  ev.value.assign(max_stages + 1, std::vector<double>(n_states, 0.0));

  for (int m = 1; m <= max_stages; ++m) {
    const auto& prev = ev.value[m - 1];
    for (std::size_t packed = 0; packed < n_states; ++packed) {
      const CacheState state = CacheState::unpack(packed, num_caches, num_segments);
      ev.value[m][packed] =
          stage_backup(state, scn, [&](const CacheState& next_state) {
            return prev[next_state.pack()];
          }).value();
    }
  }
  return ev;
}

}  // namespace cachecast
