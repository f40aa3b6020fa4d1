#include "cachecast/scenario.hpp"

#include <algorithm>

namespace cachecast {

namespace {

Scenario build_scenario(const UserLocation& user, const LinkState& user_link,
                        const std::vector<LinkState>& cache_links,
                        double segment_bits, const PhyConfig& phy) {
  Scenario sc;
  sc.serving_cache = user.serving_cache;
  sc.theta_user = theta(user_link, phy);
  if (!link_feasible(sc.theta_user, phy))
    throw std::domain_error(
        "scenario: user link infeasible at peak power; tighten the config");
  sc.cost_user = optimal_cost(sc.theta_user, segment_bits, phy);
  sc.theta_cache.reserve(cache_links.size());
  sc.cost_pair.reserve(cache_links.size());
  for (const auto& link : cache_links) {
    const double th = theta(link, phy);
    sc.theta_cache.push_back(th);
    const double th_pair = std::min(sc.theta_user, th);
    sc.cost_pair.push_back(link_feasible(th_pair, phy)
                               ? optimal_cost(th_pair, segment_bits, phy)
                               : kInfeasibleCost);
  }
  return sc;
}

}  // namespace

ScenarioSet make_scenario_set(const CellLayout& layout, const UserDistribution& dist,
                              const ShadowingModel& shadowing, double interference,
                              double segment_bits, const PhyConfig& phy,
                              std::size_t budget, std::uint64_t seed) {
  ScenarioSet set;
  set.segment_bits = segment_bits;
  set.scenarios.reserve(budget);
  RandomStream rng(seed);
  std::vector<LinkState> cache_links(layout.num_caches());
  for (std::size_t k = 0; k < budget; ++k) {
    const UserLocation user = sample_user(dist, layout, rng);
    const LinkState user_link{
        pathloss_gain(user.point, {0.0, 0.0}, layout.pathloss_exponent),
        shadowing.draw(rng), interference};
    for (std::size_t c = 0; c < layout.num_caches(); ++c) {
      cache_links[c] = {
          pathloss_gain(layout.cache_nodes[c].position, {0.0, 0.0},
                        layout.pathloss_exponent),
          shadowing.draw(rng), interference};
    }
    set.scenarios.push_back(
        build_scenario(user, user_link, cache_links, segment_bits, phy));
  }
  return set;
}

Scenario scenario_from_event(const RequestEvent& event, double segment_bits,
                             const PhyConfig& phy) {
  return build_scenario(event.user, event.user_link, event.cache_links,
                        segment_bits, phy);
}

}  // namespace cachecast
