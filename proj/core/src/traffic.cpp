#include "cachecast/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cachecast {

void FileSpec::validate() const {
  if (!(arrival_rate > 0.0)) throw std::invalid_argument("arrival_rate must be > 0");
  if (!(lifetime > 0.0)) throw std::invalid_argument("lifetime must be > 0");
  if (num_segments < 1) throw std::invalid_argument("num_segments must be >= 1");
  if (num_segments > 64) throw std::invalid_argument("num_segments must be <= 64");
  if (!(segment_bits > 0.0)) throw std::invalid_argument("segment_bits must be > 0");
  if (mean_requests() > 650.0)
    throw std::invalid_argument("arrival_rate * lifetime too large (Poisson sampler limit)");
}

void ShadowingModel::validate() const {
  if (sigma_db < 0.0) throw std::invalid_argument("shadowing sigma_db must be >= 0");
  if (!(clamp_sigmas > 0.0)) throw std::invalid_argument("clamp_sigmas must be > 0");
}

double ShadowingModel::min_gain() const {
  return std::pow(10.0, -clamp_sigmas * sigma_db / 10.0);
}

double ShadowingModel::draw(RandomStream& rng) const {
  if (sigma_db == 0.0) return 1.0;
  double db = sigma_db * rng.normal();
  const double lim = clamp_sigmas * sigma_db;
  db = std::clamp(db, -lim, lim);
  return std::pow(10.0, db / 10.0);
}

double poisson_pmf(double mean, int n) {
  if (mean < 0.0) throw std::invalid_argument("poisson_pmf: mean must be >= 0");
  if (n < 0) return 0.0;
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
}

int truncation_horizon(double mean, double epsilon) {
  if (!(epsilon > 0.0) || epsilon >= 1.0)
    throw std::invalid_argument("truncation_horizon: epsilon must be in (0, 1)");
  if (mean == 0.0) return 0;
  double cum = 0.0;
  const int hard_cap = static_cast<int>(mean + 12.0 * std::sqrt(mean) + 200.0);
  for (int n = 0; n <= hard_cap; ++n) {
    cum += poisson_pmf(mean, n);
    if (1.0 - cum < epsilon) return n;
  }
  return hard_cap;
}

RequestEvent draw_request_event(const FileSpec& spec, double arrival_time,
                                const UserDistribution& dist,
                                const CellLayout& layout,
                                const ShadowingModel& shadowing,
                                double interference, RandomStream& rng) {
  RequestEvent ev;
  ev.file_id = spec.file_id;
  ev.arrival_time = arrival_time;
  ev.user = sample_user(dist, layout, rng);
  ev.user_link = {pathloss_gain(ev.user.point, {0.0, 0.0}, layout.pathloss_exponent),
                  shadowing.draw(rng), interference};
  ev.cache_links.reserve(layout.num_caches());
  for (const auto& node : layout.cache_nodes) {
    ev.cache_links.push_back(
        {pathloss_gain(node.position, {0.0, 0.0}, layout.pathloss_exponent),
         shadowing.draw(rng), interference});
  }
  return ev;
}

std::vector<RequestEvent> generate_requests(const FileSpec& spec,
                                            const UserDistribution& dist,
                                            const CellLayout& layout,
                                            const ShadowingModel& shadowing,
                                            double interference,
                                            RandomStream& rng) {
  spec.validate();
  const int count = rng.poisson(spec.mean_requests());

  std::vector<double> times(count);
  for (int i = 0; i < count; ++i)
    times[i] = spec.start_time + spec.lifetime * rng.uniform();
  std::sort(times.begin(), times.end());

  std::vector<RequestEvent> events;
  events.reserve(count);
  for (int i = 0; i < count; ++i)
    events.push_back(draw_request_event(spec, times[i], dist, layout, shadowing,
                                        interference, rng));
  return events;
}

}  // namespace cachecast
