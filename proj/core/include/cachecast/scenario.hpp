#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "cachecast/phy.hpp"
#include "cachecast/traffic.hpp"

namespace cachecast {

/// One draw of (user location, shadowing vector) with all the per-receiver
/// link statistics and closed-form costs precomputed for a reference payload.
/// Costs are per segment; receivers with an infeasible peak-power link carry
/// +inf pair cost and are skipped as multicast targets.
struct Scenario {
  std::optional<std::size_t> serving_cache;
  double theta_user = 0.0;
  double cost_user = 0.0;                // optimal cost, user target
  std::vector<double> theta_cache;       // per cache node
  std::vector<double> cost_pair;         // optimal cost, target = min(theta_user, theta_cache[c])
};

/// Equal-weight finite scenario set standing in for the expectation over
/// (location, shadowing). The same set is shared by the analytic value
/// tables, the exact value-iteration oracle, and the refined bound, so their
/// comparisons carry no Monte Carlo error.
struct ScenarioSet {
  std::vector<Scenario> scenarios;
  double segment_bits = 1.0;  // reference payload the costs were built for

  std::size_t size() const { return scenarios.size(); }
};

/// Seeded scenario set. Throws std::domain_error if any drawn user link is
/// infeasible at peak power (configs are validated to make this impossible).
ScenarioSet make_scenario_set(const CellLayout& layout, const UserDistribution& dist,
                              const ShadowingModel& shadowing, double interference,
                              double segment_bits, const PhyConfig& phy,
                              std::size_t budget, std::uint64_t seed);

/// Scenario view of one already-drawn request event (used by the learner's
/// counterfactual per-event samples).
Scenario scenario_from_event(const RequestEvent& event, double segment_bits,
                             const PhyConfig& phy);

constexpr double kInfeasibleCost = std::numeric_limits<double>::infinity();

}  // namespace cachecast
