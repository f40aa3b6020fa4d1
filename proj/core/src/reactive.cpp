#include "cachecast/reactive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cachecast {

namespace {

constexpr double kRateTolerance = 1e-9;  // relative slack on decode checks

std::vector<double> cache_thetas(const RequestEvent& event, const PhyConfig& phy) {
  std::vector<double> th(event.cache_links.size());
  for (std::size_t c = 0; c < event.cache_links.size(); ++c)
    th[c] = theta(event.cache_links[c], phy);
  return th;
}

bool decodes(double theta_value, double power, double symbols, double info_bits,
             const PhyConfig& phy) {
  return symbols * symbol_rate(theta_value, power, phy) >=
         info_bits * (1.0 - kRateTolerance);
}

SegmentDecision make_segment_decision(int segment, const TxPlan& plan,
                                      const RequestEvent& event,
                                      const SchedulerContext& ctx) {
  SegmentDecision d;
  d.segment = segment;
  d.power = plan.power;
  d.symbols = plan.symbols;
  d.receiving_caches =
      receiving_set(event, plan.power, plan.symbols, ctx.file->segment_bits, *ctx.phy);
  return d;
}

}  // namespace

std::vector<int> demanded_segments(const CacheState& state, const UserLocation& user,
                                   int num_segments) {
  std::vector<int> out;
  if (user.serving_cache.has_value()) {
    const int c = static_cast<int>(*user.serving_cache);
    for (int s = 0; s < num_segments; ++s)
      if (!state.get(c, s)) out.push_back(s);
  } else {
    for (int s = 0; s < num_segments; ++s) out.push_back(s);
  }
  return out;
}

std::vector<std::size_t> receiving_set(const RequestEvent& event, double power,
                                       double symbols, double info_bits,
                                       const PhyConfig& phy) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < event.cache_links.size(); ++c) {
    if (decodes(theta(event.cache_links[c], phy), power, symbols, info_bits, phy))
      out.push_back(c);
  }
  return out;
}

void validate_decision(const Decision& d, const SchedulerContext& ctx) {
  const auto demanded =
      demanded_segments(*ctx.state, ctx.event->user, ctx.file->num_segments);
  if (d.segments.size() != demanded.size())
    throw std::logic_error("decision does not cover the demanded segment set");
  const double theta_user = theta(ctx.event->user_link, *ctx.phy);
  for (std::size_t k = 0; k < d.segments.size(); ++k) {
    const auto& sd = d.segments[k];
    if (sd.segment != demanded[k])
      throw std::logic_error("decision segment set mismatch");
    if (sd.power > ctx.phy->peak_power * (1.0 + 1e-12))
      throw std::logic_error("decision violates the peak power constraint");
    if (!(sd.power > 0.0) || !(sd.symbols > 0.0))
      throw std::logic_error("decision has nonpositive power or symbols");
    if (!decodes(theta_user, sd.power, sd.symbols, ctx.file->segment_bits, *ctx.phy))
      throw std::logic_error("decision fails the requesting user's rate constraint");
    for (std::size_t c : sd.receiving_caches) {
      if (!decodes(theta(ctx.event->cache_links[c], *ctx.phy), sd.power, sd.symbols,
                   ctx.file->segment_bits, *ctx.phy))
        throw std::logic_error("decision lists a cache that cannot decode");
    }
  }
}

Decision ProposedPolicy::decide(const SchedulerContext& ctx) const {
  if (ctx.values == nullptr)
    throw std::logic_error("proposed policy requires a value table");
  const auto& event = *ctx.event;
  const auto demanded =
      demanded_segments(*ctx.state, event.user, ctx.file->num_segments);
  Decision out;
  if (demanded.empty()) return out;

  const double theta_user = theta(event.user_link, *ctx.phy);
  const auto theta_c = cache_thetas(event, *ctx.phy);

  // Poisson-weighted future penalty of leaving cache j undecoded on one bit.
  const double mean = ctx.file->arrival_rate * ctx.remaining_lifetime;
  const auto weights = poisson_mixture_weights(mean, ctx.truncation_epsilon,
                                               ctx.values->max_stages());
  std::vector<double> future(theta_c.size(), 0.0);
  for (std::size_t j = 0; j < theta_c.size(); ++j) {
    double m = 0.0;
    for (int n = 1; n < static_cast<int>(weights.size()); ++n)
      m += weights[n] * ctx.values->diff(j, n);
    future[j] = m;
  }

  struct Option {
    double theta;
    double penalty_excluded;  // future cost of caches strictly below this target
  };

  for (int s : demanded) {
    // Undecoded caches with worse statistic than the user, best first.
    std::vector<std::size_t> worse;
    for (std::size_t j = 0; j < theta_c.size(); ++j) {
      if (!ctx.state->get(static_cast<int>(j), s) && theta_c[j] < theta_user &&
          link_feasible(theta_c[j], *ctx.phy))
        worse.push_back(j);
    }
    std::sort(worse.begin(), worse.end(), [&](std::size_t a, std::size_t b) {
      if (theta_c[a] != theta_c[b]) return theta_c[a] > theta_c[b];
      return a < b;
    });

    // Candidate k covers the user and the k best of the worse caches; the
    // remaining ones keep their future penalty.
    std::vector<double> suffix(worse.size() + 1, 0.0);
    for (std::size_t k = worse.size(); k-- > 0;)
      suffix[k] = suffix[k + 1] + future[worse[k]];

    double best_q = std::numeric_limits<double>::infinity();
    TxPlan best_plan;
    for (std::size_t k = 0; k <= worse.size(); ++k) {
      const double target_theta = (k == 0) ? theta_user : theta_c[worse[k - 1]];
      const TxPlan plan =
          optimal_transmission(target_theta, ctx.file->segment_bits, *ctx.phy);
      const double q = plan.weighted_cost(ctx.phy->symbol_weight) + suffix[k];
      if (q < best_q) {
        best_q = q;
        best_plan = plan;
      }
    }
    out.segments.push_back(make_segment_decision(s, best_plan, event, ctx));
  }
  return out;
}

Decision Baseline1Policy::decide(const SchedulerContext& ctx) const {
  const auto& event = *ctx.event;
  const auto demanded =
      demanded_segments(*ctx.state, event.user, ctx.file->num_segments);
  Decision out;
  if (demanded.empty()) return out;
  const double theta_user = theta(event.user_link, *ctx.phy);
  const TxPlan plan = optimal_transmission(theta_user, ctx.file->segment_bits, *ctx.phy);
  for (int s : demanded)
    out.segments.push_back(make_segment_decision(s, plan, event, ctx));
  return out;
}

Decision Baseline2Policy::decide(const SchedulerContext& ctx) const {
  if (ctx.request_ordinal > 1) return Baseline1Policy().decide(ctx);
  const auto& event = *ctx.event;
  const auto demanded =
      demanded_segments(*ctx.state, event.user, ctx.file->num_segments);
  Decision out;
  if (demanded.empty()) return out;
  double worst = theta(event.user_link, *ctx.phy);
  for (const auto& link : event.cache_links)
    worst = std::min(worst, theta(link, *ctx.phy));
  const TxPlan plan = optimal_transmission(worst, ctx.file->segment_bits, *ctx.phy);
  for (int s : demanded)
    out.segments.push_back(make_segment_decision(s, plan, event, ctx));
  return out;
}

}  // namespace cachecast
