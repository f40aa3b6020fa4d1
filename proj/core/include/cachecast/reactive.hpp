#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cachecast/cache_state.hpp"
#include "cachecast/traffic.hpp"
#include "cachecast/value_table.hpp"

namespace cachecast {

/// One multicast choice for one segment: power, real-valued symbol count, and
/// the cache nodes whose decode condition the choice satisfies.
struct SegmentDecision {
  int segment = 0;
  double power = 0.0;
  double symbols = 0.0;
  std::vector<std::size_t> receiving_caches;
};

struct Decision {
  std::vector<SegmentDecision> segments;
};

/// Everything a policy may look at when a request arrives.
struct SchedulerContext {
  const CacheState* state = nullptr;
  const RequestEvent* event = nullptr;
  const FileSpec* file = nullptr;
  const PhyConfig* phy = nullptr;
  const FileValueView* values = nullptr;  // required by the proposed policy
  double remaining_lifetime = 0.0;        // t_f + T_f - arrival_time
  double truncation_epsilon = 1e-6;
  int request_ordinal = 1;                // 1-based request index for this file
};

/// Segments the BS must multicast for this request: the serving cache's
/// missing segments, or all of them when no cache covers the user.
std::vector<int> demanded_segments(const CacheState& state, const UserLocation& user,
                                   int num_segments);

/// Cache nodes that decode a (power, symbols) multicast of one segment.
std::vector<std::size_t> receiving_set(const RequestEvent& event, double power,
                                       double symbols, double info_bits,
                                       const PhyConfig& phy);

/// Throws std::logic_error unless the decision covers exactly the demanded
/// segments and every segment satisfies the peak-power, user-decode, and
/// cache-decode constraints. Run by the engine on every simulated decision.
void validate_decision(const Decision& d, const SchedulerContext& ctx);

class ReactivePolicy {
 public:
  virtual ~ReactivePolicy() = default;
  virtual Decision decide(const SchedulerContext& ctx) const = 0;
  virtual std::string name() const = 0;
};

/// Per-segment argmin over multicast targets of current cost plus the
/// Poisson-weighted linear-approximation future cost of the caches left
/// undecoded. Candidate targets are the requesting user and every undecoded
/// cache with strictly worse statistic; ties keep the fewest extra receivers.
class ProposedPolicy : public ReactivePolicy {
 public:
  Decision decide(const SchedulerContext& ctx) const override;
  std::string name() const override { return "proposed"; }
};

/// Sizes every demanded segment for the requesting user only; caches with a
/// better statistic decode opportunistically.
class Baseline1Policy : public ReactivePolicy {
 public:
  Decision decide(const SchedulerContext& ctx) const override;
  std::string name() const override { return "baseline1"; }
};

/// First request: sizes every segment so the worst cache node (and the user)
/// decodes, filling all caches at once. Afterwards identical to baseline 1.
class Baseline2Policy : public ReactivePolicy {
 public:
  Decision decide(const SchedulerContext& ctx) const override;
  std::string name() const override { return "baseline2"; }
};

}  // namespace cachecast
