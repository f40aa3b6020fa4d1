#include "cachecast/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cachecast/scenario.hpp"

namespace cachecast {

ValueLearner::ValueLearner(ValueTable prior, double tau)
    : table_(std::move(prior)), tau_(tau) {
  if (std::isnan(tau) || tau < 0.0)
    throw std::invalid_argument("ValueLearner: tau must be >= 0");
  if (table_.max_stages < 1 || table_.num_caches < 0)
    throw std::invalid_argument("ValueLearner: malformed prior table");
}

void ValueLearner::observe(const RequestEvent& event, const PhyConfig& phy) {
  // Single-draw scenario of this event, priced for the reference file.
  ScenarioSet single;
  single.segment_bits = table_.segment_bits;
  single.scenarios.push_back(scenario_from_event(event, table_.segment_bits, phy));

  const int nc = table_.num_caches;
  const int ns = table_.num_segments;
  ++iterations_;
  const double keep = iterations_ / (iterations_ + 1.0);
  const double take = 1.0 / (iterations_ + 1.0);
  double delta = 0.0;

  // Stage cost from the everything-cached state; the N-stage sample reuses
  // the draw once per stage.
  const CacheState star = CacheState::all_cached(nc, ns);
  const double star_cost =
      stage_backup(star, single, [](const CacheState&) { return 0.0; }).value();

  std::vector<double> new_star(table_.max_stages);
  for (int n = 1; n <= table_.max_stages; ++n) {
    const double sample = n * star_cost;
    new_star[n - 1] = keep * table_.v_star[n - 1] + take * sample;
    delta = std::max(delta, std::abs(new_star[n - 1] - table_.v_star[n - 1]));
  }

  // One-missing-bit states: next-stage values come from the current estimates.
  std::vector<std::vector<double>> new_one(nc, std::vector<double>(table_.max_stages));
  for (int i = 0; i < nc; ++i) {
    const CacheState one = CacheState::all_but(nc, ns, i, ns - 1);
    for (int n = 1; n <= table_.max_stages; ++n) {
      const double next_star = (n == 1) ? 0.0 : table_.v_star[n - 2];
      const double next_one = (n == 1) ? 0.0 : table_.v_one[i][n - 2];
      const double sample =
          stage_backup(one, single, [&](const CacheState& st) {
            return st.full() ? next_star : next_one;
          }).value();
      new_one[i][n - 1] = keep * table_.v_one[i][n - 1] + take * sample;
      delta = std::max(delta, std::abs(new_one[i][n - 1] - table_.v_one[i][n - 1]));
    }
  }

  table_.v_star = std::move(new_star);
  for (int i = 0; i < nc; ++i) table_.v_one[i] = std::move(new_one[i]);
  last_delta_ = delta;
}

double max_relative_error(const ValueTable& estimate, const ValueTable& reference) {
  if (estimate.num_caches != reference.num_caches ||
      estimate.max_stages != reference.max_stages)
    throw std::invalid_argument("max_relative_error: table shapes differ");
  double worst = 0.0;
  auto rel = [](double a, double b) {
    const double scale = std::max(std::abs(b), 1e-300);
    return std::abs(a - b) / scale;
  };
  for (int n = 1; n <= reference.max_stages; ++n) {
    worst = std::max(worst, rel(estimate.star(n), reference.star(n)));
    for (int c = 0; c < reference.num_caches; ++c)
      worst = std::max(worst, rel(estimate.one(c, n), reference.one(c, n)));
  }
  return worst;
}

}  // namespace cachecast
