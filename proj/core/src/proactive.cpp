#include "cachecast/proactive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cachecast {

void ProactiveSettings::validate() const {
  if (!enabled) return;
  if (!(period > 0.0)) throw std::invalid_argument("proactive period must be > 0");
  if (!(tau_prime > 1.0)) throw std::invalid_argument("proactive tau_prime must be > 1");
}

double remaining_cost_estimate(const CacheState& state, double remaining_lifetime,
                               double arrival_rate, const FileValueView& view,
                               double epsilon) {
  if (remaining_lifetime < 0.0)
    throw std::invalid_argument("remaining_cost_estimate: negative lifetime");
  const double mean = arrival_rate * remaining_lifetime;
  if (mean == 0.0) return 0.0;
  const auto w = poisson_mixture_weights(mean, epsilon, view.max_stages());
  double out = 0.0;
  for (int n = 1; n < static_cast<int>(w.size()); ++n)
    out += w[n] * view.approx_value(state, n);
  return out;
}

namespace {

// Poisson-mixtured linear value pieces for one file at one opportunity.
struct MixtureView {
  double base = 0.0;             // mixture of star values
  std::vector<double> diff_mix;  // per cache: mixture of one-bit increments

  double value(const CacheState& state) const {
    double v = base;
    for (int c = 0; c < state.num_caches(); ++c) {
      const int z = state.zeros_in_row(c);
      if (z > 0) v += z * diff_mix[c];
    }
    return v;
  }
};

MixtureView make_mixture(const ProactiveFileContext& file, double epsilon) {
  MixtureView mv;
  mv.diff_mix.assign(file.state->num_caches(), 0.0);
  const double mean = file.arrival_rate * file.remaining_lifetime;
  if (mean == 0.0) return mv;
  const auto w = poisson_mixture_weights(mean, epsilon, file.values->max_stages());
  for (int n = 1; n < static_cast<int>(w.size()); ++n) {
    mv.base += w[n] * file.values->star(n);
    for (int c = 0; c < file.state->num_caches(); ++c)
      mv.diff_mix[c] += w[n] * file.values->diff(c, n);
  }
  return mv;
}

CandidateResult evaluate_with_mixture(const ProactiveFileContext& file, int segment,
                                      const MixtureView& mv,
                                      const std::vector<double>& cache_theta,
                                      const PhyConfig& phy) {
  CandidateResult best;
  const CacheState& state = *file.state;
  const double cost_without = mv.value(state);
  if (!(cost_without > 0.0)) return best;

  // Threshold receiving sets: targeting node j hands the segment to every
  // undecoded node whose draw is at least as good.
  for (int j = 0; j < state.num_caches(); ++j) {
    if (state.get(j, segment)) continue;
    if (!link_feasible(cache_theta[j], phy)) continue;  // candidate skipped
    const TxPlan plan = optimal_transmission(cache_theta[j], file.segment_bits, phy);
    std::vector<std::size_t> flips;
    double saved = 0.0;
    for (int c = 0; c < state.num_caches(); ++c) {
      if (!state.get(c, segment) && cache_theta[c] >= cache_theta[j]) {
        flips.push_back(static_cast<std::size_t>(c));
        saved += mv.diff_mix[c];
      }
    }
    const double cost_with = cost_without - saved;
    const double ratio =
        cost_without / (plan.weighted_cost(phy.symbol_weight) + cost_with);
    if (ratio > best.gain_ratio) {
      best.gain_ratio = ratio;
      best.power = plan.power;
      best.symbols = plan.symbols;
      best.receiving_caches = std::move(flips);
    }
  }
  return best;
}

}  // namespace

CandidateResult evaluate_candidate(const ProactiveFileContext& file, int segment,
                                   const std::vector<double>& cache_theta,
                                   const PhyConfig& phy, double epsilon) {
  return evaluate_with_mixture(file, segment, make_mixture(file, epsilon),
                               cache_theta, phy);
}

ProactiveDecision proactive_decide(const std::vector<ProactiveFileContext>& files,
                                   const std::vector<double>& cache_theta,
                                   const PhyConfig& phy, double tau_prime,
                                   double epsilon) {
  if (!(tau_prime > 1.0))
    throw std::invalid_argument("proactive_decide: tau_prime must be > 1");
  ProactiveDecision d;
  for (const auto& file : files) {
    const MixtureView mv = make_mixture(file, epsilon);
    for (int s = 0; s < file.state->num_segments(); ++s) {
      CandidateResult cr = evaluate_with_mixture(file, s, mv, cache_theta, phy);
      if (cr.gain_ratio > d.gain_ratio) {
        d.gain_ratio = cr.gain_ratio;
        d.file_index = file.file_index;
        d.segment = s;
        d.power = cr.power;
        d.symbols = cr.symbols;
        d.receiving_caches = std::move(cr.receiving_caches);
      }
    }
  }
  d.transmit = d.gain_ratio > 0.0 && d.gain_ratio >= tau_prime;
  return d;
}

}  // namespace cachecast
