#pragma once

#include <limits>

#include "cachecast/traffic.hpp"
#include "cachecast/value_table.hpp"

namespace cachecast {

/// Online estimator of the reference-state value functions from observed
/// request arrivals, for when the user spatial distribution is unknown.
///
/// Each observed event is evaluated counterfactually: the draw's location and
/// link statistics are priced for the learner's reference file via the same
/// one-step backup the analytic tables use, with the learner's own current
/// estimates as next-stage values. Estimates are running means with the prior
/// table acting as one pseudo-sample (the paper's t/(t+1) weighting).
class ValueLearner {
 public:
  /// `prior` is typically the analytic table built under a uniform user
  /// assumption; a zero-filled table gives plain sample means.
  /// tau < 0 is rejected; tau == 0 never declares convergence while samples
  /// move.
  ValueLearner(ValueTable prior, double tau);

  /// Consume one request event (from any catalog file; the draw is re-priced
  /// for the reference file, which is how cross-file payloads normalize out).
  /// All (stage, cache) entries update from this single draw.
  void observe(const RequestEvent& event, const PhyConfig& phy);

  /// True iff the largest entry change in the last update was <= tau.
  bool converged() const { return last_delta_ <= tau_; }

  int iterations() const { return iterations_; }
  double last_delta() const { return last_delta_; }
  double tau() const { return tau_; }
  const ValueTable& table() const { return table_; }

 private:
  ValueTable table_;
  double tau_;
  int iterations_ = 0;
  double last_delta_ = std::numeric_limits<double>::infinity();
};

/// Largest relative entry error of `estimate` against `reference`
/// (entries compared at matching (stage, cache) positions).
double max_relative_error(const ValueTable& estimate, const ValueTable& reference);

}  // namespace cachecast
